// SPDX-License-Identifier: Apache-2.0
//
// wcris - beam synthesis for wave-controlled reconfigurable intelligent surfaces
// Copyright (C) 2026 The wcris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WCRIS_COMMON_TEXT_HPP
#define WCRIS_COMMON_TEXT_HPP

#include "error.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// Locale-independent number <-> text helpers. Doubles are written in
// shortest round-trip form so that text files are lossless.

namespace wcris
{
    inline std::string format_double(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    inline std::string_view trim(std::string_view s)
    {
        const auto ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    inline double parse_double(std::string_view s)
    {
        s = trim(s);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw FormatError("not a number: '" + std::string(s) + "'");
        return v;
    }

    inline std::int64_t parse_int(std::string_view s)
    {
        s = trim(s);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw FormatError("not an integer: '" + std::string(s) + "'");
        return v;
    }

    inline std::uint64_t parse_uint(std::string_view s)
    {
        s = trim(s);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw FormatError("not an unsigned integer: '" + std::string(s) + "'");
        return v;
    }

    inline std::vector<std::string_view> split(std::string_view s, char sep)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            const auto pos = s.find(sep, start);
            out.push_back(trim(s.substr(start, pos - start)));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        return out;
    }

    /// "a,b,c" -> {a,b,c}; an empty string yields an empty list.
    inline std::vector<double> parse_double_list(std::string_view s, char sep = ',')
    {
        std::vector<double> out;
        if (trim(s).empty())
            return out;
        for (auto tok : split(s, sep))
            out.push_back(parse_double(tok));
        return out;
    }

    inline std::string join_doubles(const std::vector<double> &v, char sep = ',')
    {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (i)
                out.push_back(sep);
            out += format_double(v[i]);
        }
        return out;
    }
}

#endif

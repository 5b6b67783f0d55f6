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

#ifndef WCRIS_COMMON_HASH_HPP
#define WCRIS_COMMON_HASH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace wcris
{
    /// 64-bit FNV-1a, used for file fingerprints and payload checksums.
    class Fnv1a
    {
    public:
        Fnv1a &bytes(const void *data, std::size_t size)
        {
            const auto *p = static_cast<const unsigned char *>(data);
            for (std::size_t i = 0; i < size; ++i)
            {
                state_ ^= p[i];
                state_ *= 0x100000001b3ULL;
            }
            return *this;
        }

        Fnv1a &text(std::string_view s) { return bytes(s.data(), s.size()); }

        Fnv1a &value(double v)
        {
            const auto bits = std::bit_cast<std::uint64_t>(v);
            return bytes(&bits, sizeof bits);
        }

        Fnv1a &value(std::uint64_t v) { return bytes(&v, sizeof v); }

        Fnv1a &values(std::span<const double> v)
        {
            for (double x : v)
                value(x);
            return *this;
        }

        std::uint64_t digest() const { return state_; }

    private:
        std::uint64_t state_ = 0xcbf29ce484222325ULL;
    };

    inline std::string to_hex(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    inline std::optional<std::uint64_t> from_hex(std::string_view s)
    {
        if (s.empty() || s.size() > 16)
            return std::nullopt;
        std::uint64_t v = 0;
        for (char c : s)
        {
            v <<= 4;
            if (c >= '0' && c <= '9')
                v |= static_cast<std::uint64_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                v |= static_cast<std::uint64_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                v |= static_cast<std::uint64_t>(c - 'A' + 10);
            else
                return std::nullopt;
        }
        return v;
    }
}

#endif

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

#ifndef WCRIS_COMMON_CONTAINER_HPP
#define WCRIS_COMMON_CONTAINER_HPP

#include "binary_io.hpp"
#include "error.hpp"
#include "hash.hpp"
#include "text.hpp"

#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Self-describing file container shared by datasets and models:
//
//   <magic> <version>
//   key value
//   ...
//   payload_bytes <n>
//   checksum <fnv1a-64 hex of header lines + payload>
//   end
//   <n raw bytes>

namespace wcris
{
    struct ContainerHeader
    {
        std::string magic;
        int version = 1;
        std::vector<std::pair<std::string, std::string>> fields;

        void set(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }

        const std::string &get(std::string_view key) const
        {
            for (const auto &[k, v] : fields)
                if (k == key)
                    return v;
            throw FormatError(magic + ": missing header field '" + std::string(key) + "'");
        }

        bool has(std::string_view key) const
        {
            for (const auto &[k, v] : fields)
                if (k == key)
                    return true;
            return false;
        }
    };

    namespace detail
    {
        inline std::string header_body(const ContainerHeader &h)
        {
            std::string out = h.magic + " " + std::to_string(h.version) + "\n";
            for (const auto &[k, v] : h.fields)
                out += k + " " + v + "\n";
            return out;
        }
    }

    inline std::string encode_container(const ContainerHeader &header, const std::string &payload)
    {
        std::string body = detail::header_body(header);
        body += "payload_bytes " + std::to_string(payload.size()) + "\n";
        const auto sum = Fnv1a().text(body).text(payload).digest();
        body += "checksum " + to_hex(sum) + "\nend\n";
        body += payload;
        return body;
    }

    struct DecodedContainer
    {
        ContainerHeader header;
        std::string payload;
    };

    inline DecodedContainer decode_container(std::string_view bytes, std::string_view magic, int version)
    {
        DecodedContainer out;
        std::size_t pos = 0;
        auto next_line = [&]() -> std::string_view {
            const auto nl = bytes.find('\n', pos);
            if (nl == std::string_view::npos)
                throw FormatError(std::string(magic) + ": truncated header");
            auto line = bytes.substr(pos, nl - pos);
            pos = nl + 1;
            return line;
        };

        const auto first = next_line();
        const auto sp = first.find(' ');
        if (sp == std::string_view::npos || first.substr(0, sp) != magic)
            throw FormatError("not a " + std::string(magic) + " file");
        out.header.magic = std::string(magic);
        out.header.version = static_cast<int>(parse_int(first.substr(sp + 1)));
        if (out.header.version != version)
            throw FormatError(std::string(magic) + ": unsupported version " + std::to_string(out.header.version));

        std::size_t payload_bytes = 0;
        std::string checksum;
        std::size_t body_end = 0;
        while (true)
        {
            const auto line = next_line();
            if (line == "end")
                break;
            const auto s = line.find(' ');
            if (s == std::string_view::npos)
                throw FormatError(std::string(magic) + ": malformed header line '" + std::string(line) + "'");
            const auto key = line.substr(0, s);
            const auto value = line.substr(s + 1);
            if (key == "payload_bytes")
            {
                payload_bytes = static_cast<std::size_t>(parse_uint(value));
                body_end = pos;
            }
            else if (key == "checksum")
                checksum = std::string(value);
            else
            {
                if (body_end != 0)
                    throw FormatError(std::string(magic) + ": field after payload_bytes");
                out.header.fields.emplace_back(std::string(key), std::string(value));
            }
        }
        if (body_end == 0 || checksum.empty())
            throw FormatError(std::string(magic) + ": missing payload size or checksum");
        if (bytes.size() - pos != payload_bytes)
            throw FormatError(std::string(magic) + ": payload size mismatch");
        out.payload = std::string(bytes.substr(pos));
        const auto sum = Fnv1a().text(bytes.substr(0, body_end)).text(out.payload).digest();
        if (to_hex(sum) != checksum)
            throw FormatError(std::string(magic) + ": checksum mismatch (file corrupted)");
        return out;
    }

    inline void write_file(const std::string &path, const std::string &bytes)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw FormatError("cannot open '" + path + "' for writing");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f)
            throw FormatError("write failed: '" + path + "'");
    }

    inline std::string read_file(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw FormatError("cannot open '" + path + "'");
        return read_all(f);
    }
}

#endif

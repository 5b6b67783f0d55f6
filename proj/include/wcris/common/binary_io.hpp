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

#ifndef WCRIS_COMMON_BINARY_IO_HPP
#define WCRIS_COMMON_BINARY_IO_HPP

#include "error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Little-endian packing of float32/float64 arrays, independent of host order.

namespace wcris
{
    namespace detail
    {
        template <class U>
        U to_little(U v)
        {
            if constexpr (std::endian::native == std::endian::little)
                return v;
            U out = 0;
            for (std::size_t i = 0; i < sizeof(U); ++i)
                out |= ((v >> (8 * i)) & 0xffu) << (8 * (sizeof(U) - 1 - i));
            return out;
        }
    }

    inline void append_f32(std::string &buf, std::span<const double> values)
    {
        const auto offset = buf.size();
        buf.resize(offset + 4 * values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const auto bits = detail::to_little(std::bit_cast<std::uint32_t>(static_cast<float>(values[i])));
            std::memcpy(buf.data() + offset + 4 * i, &bits, 4);
        }
    }

    inline void append_f64(std::string &buf, std::span<const double> values)
    {
        const auto offset = buf.size();
        buf.resize(offset + 8 * values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const auto bits = detail::to_little(std::bit_cast<std::uint64_t>(values[i]));
            std::memcpy(buf.data() + offset + 8 * i, &bits, 8);
        }
    }

    inline void append_u64(std::string &buf, std::uint64_t v)
    {
        const auto bits = detail::to_little(v);
        const auto offset = buf.size();
        buf.resize(offset + 8);
        std::memcpy(buf.data() + offset, &bits, 8);
    }

    /// Cursor over a byte buffer; every read is bounds-checked.
    class ByteReader
    {
    public:
        explicit ByteReader(std::string_view data) : data_(data) {}

        double f32()
        {
            std::uint32_t bits;
            take(&bits, 4);
            return static_cast<double>(std::bit_cast<float>(detail::to_little(bits)));
        }

        double f64()
        {
            std::uint64_t bits;
            take(&bits, 8);
            return std::bit_cast<double>(detail::to_little(bits));
        }

        std::uint64_t u64()
        {
            std::uint64_t bits;
            take(&bits, 8);
            return detail::to_little(bits);
        }

        std::size_t remaining() const { return data_.size() - pos_; }

    private:
        void take(void *dst, std::size_t n)
        {
            if (pos_ + n > data_.size())
                throw FormatError("unexpected end of binary payload");
            std::memcpy(dst, data_.data() + pos_, n);
            pos_ += n;
        }

        std::string_view data_;
        std::size_t pos_ = 0;
    };

    inline std::string read_all(std::istream &in)
    {
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
}

#endif

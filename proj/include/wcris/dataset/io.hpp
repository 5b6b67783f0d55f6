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

#ifndef WCRIS_DATASET_IO_HPP
#define WCRIS_DATASET_IO_HPP

#include "../common/binary_io.hpp"
#include "../common/container.hpp"
#include "../common/text.hpp"
#include "dataset.hpp"

#include <optional>
#include <ostream>
#include <string>

// Dataset files: a WCRIS-DATASET container whose payload holds, per sample,
// N float32 amplitudes followed by n float32 powers (little endian).

namespace wcris::dataset
{
    inline constexpr const char *kDatasetMagic = "WCRIS-DATASET";
    inline constexpr int kDatasetVersion = 1;

    inline std::string encode_dataset(const Dataset &ds)
    {
        ContainerHeader h{kDatasetMagic, kDatasetVersion, {}};
        h.set("physics", to_hex(ds.meta.physics_fingerprint));
        h.set("harmonics", std::to_string(ds.meta.harmonics));
        h.set("angle_min", format_double(ds.meta.grid.min_deg));
        h.set("angle_max", format_double(ds.meta.grid.max_deg));
        h.set("angle_count", std::to_string(ds.meta.grid.count));
        h.set("count", std::to_string(ds.size()));
        h.set("seed", std::to_string(ds.meta.seed));
        h.set("sigma1", format_double(ds.meta.sigma1));
        h.set("sigma2", format_double(ds.meta.sigma2));
        h.set("rejected", std::to_string(ds.meta.rejected));
        h.set("amplitude_max", format_double(ds.scaling.amplitude_max));
        h.set("power_min", format_double(ds.scaling.power_min));
        h.set("power_max", format_double(ds.scaling.power_max));

        std::string payload;
        const std::size_t per = static_cast<std::size_t>(ds.input_width() + ds.output_width()) * 4;
        payload.reserve(per * ds.size());
        for (const auto &s : ds.samples)
        {
            if (static_cast<int>(s.amplitudes.size()) != ds.input_width() ||
                static_cast<int>(s.powers_db.size()) != ds.output_width())
                throw FormatError("dataset: sample widths disagree with header");
            append_f32(payload, s.amplitudes);
            append_f32(payload, s.powers_db);
        }
        return encode_container(h, payload);
    }

    /// Parses a dataset file image. When expected_physics is given, a file made
    /// under a different physics model is refused.
    inline Dataset decode_dataset(std::string_view bytes, std::optional<std::uint64_t> expected_physics = {})
    {
        const auto c = decode_container(bytes, kDatasetMagic, kDatasetVersion);
        const auto &h = c.header;
        Dataset ds;
        const auto fp = from_hex(h.get("physics"));
        if (!fp)
            throw FormatError("dataset: malformed physics fingerprint");
        ds.meta.physics_fingerprint = *fp;
        if (expected_physics && *expected_physics != *fp)
            throw FormatError("dataset: physics fingerprint " + to_hex(*fp) + " does not match the current model (" +
                              to_hex(*expected_physics) + "); regenerate the dataset");
        ds.meta.harmonics = static_cast<int>(parse_int(h.get("harmonics")));
        ds.meta.grid.min_deg = parse_double(h.get("angle_min"));
        ds.meta.grid.max_deg = parse_double(h.get("angle_max"));
        ds.meta.grid.count = static_cast<int>(parse_int(h.get("angle_count")));
        ds.meta.seed = parse_uint(h.get("seed"));
        ds.meta.sigma1 = parse_double(h.get("sigma1"));
        ds.meta.sigma2 = parse_double(h.get("sigma2"));
        ds.meta.rejected = parse_uint(h.get("rejected"));
        ds.scaling.amplitude_max = parse_double(h.get("amplitude_max"));
        ds.scaling.power_min = parse_double(h.get("power_min"));
        ds.scaling.power_max = parse_double(h.get("power_max"));
        if (ds.meta.harmonics < 1 || ds.meta.grid.count < 2)
            throw FormatError("dataset: invalid widths in header");

        const auto count = static_cast<std::size_t>(parse_uint(h.get("count")));
        const auto n_in = static_cast<std::size_t>(ds.meta.harmonics);
        const auto n_out = static_cast<std::size_t>(ds.meta.grid.count);
        if (c.payload.size() != count * (n_in + n_out) * 4)
            throw FormatError("dataset: payload size does not match count and widths");

        ByteReader r(c.payload);
        ds.samples.resize(count);
        for (auto &s : ds.samples)
        {
            s.amplitudes.resize(n_in);
            s.powers_db.resize(n_out);
            for (auto &x : s.amplitudes)
                x = r.f32();
            for (auto &x : s.powers_db)
                x = r.f32();
        }
        return ds;
    }

    inline void save_dataset(const Dataset &ds, const std::string &path) { write_file(path, encode_dataset(ds)); }

    inline Dataset load_dataset(const std::string &path, std::optional<std::uint64_t> expected_physics = {})
    {
        return decode_dataset(read_file(path), expected_physics);
    }

    /// Header W_1..W_N,P_1..P_n then one row per sample.
    inline void export_csv(const Dataset &ds, std::ostream &out)
    {
        for (int i = 1; i <= ds.input_width(); ++i)
            out << (i > 1 ? "," : "") << "W_" << i;
        for (int i = 1; i <= ds.output_width(); ++i)
            out << ",P_" << i;
        out << '\n';
        for (const auto &s : ds.samples)
            out << join_doubles(s.amplitudes) << ',' << join_doubles(s.powers_db) << '\n';
    }
}

#endif

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


#ifndef WCRIS_NN_MODEL_IO_HPP
#define WCRIS_NN_MODEL_IO_HPP

#include "../common/binary_io.hpp"
#include "../common/container.hpp"
#include "../dataset/dataset.hpp"
#include "mlp.hpp"

#include <optional>
#include <span>
#include <string>

// Model files: a WCRIS-MODEL container holding the architecture, the scaling
// the network was trained under, the physics fingerprint of its dataset and
// all parameters as float64. Optimizer moments may follow the parameters.

namespace wcris::nn
{
    inline constexpr const char *kModelMagic = "WCRIS-MODEL";
    inline constexpr int kModelVersion = 1;

    /// A trained network together with the data mapping it expects.
    struct SurrogateModel
    {
        Mlp net;
        dataset::ScalingSpec scaling;
        std::uint64_t physics_fingerprint = 0;
        std::optional<AdamState> optimizer;
    };

    inline std::string encode_model(const SurrogateModel &m)
    {
        const auto &a = m.net.architecture();
        ContainerHeader h{kModelMagic, kModelVersion, {}};
        h.set("inputs", std::to_string(m.net.input_width()));
        h.set("outputs", std::to_string(m.net.output_width()));
        h.set("epochs", std::to_string(a.epochs));
        h.set("batch_size", std::to_string(a.batch_size));
        std::string layers;
        for (const auto &l : a.layers)
            layers += (layers.empty() ? "" : ",") + std::to_string(l.nodes) + ":" + to_string(l.activation);
        h.set("layers", layers.empty() ? "-" : layers);
        h.set("physics", to_hex(m.physics_fingerprint));
        h.set("amplitude_max", format_double(m.scaling.amplitude_max));
        h.set("power_min", format_double(m.scaling.power_min));
        h.set("power_max", format_double(m.scaling.power_max));
        h.set("scaling", to_hex(m.scaling.fingerprint()));
        h.set("parameters", std::to_string(m.net.parameter_count()));
        if (m.optimizer)
        {
            h.set("adam_beta1", format_double(m.optimizer->beta1));
            h.set("adam_beta2", format_double(m.optimizer->beta2));
            h.set("adam_epsilon", format_double(m.optimizer->epsilon));
            h.set("adam_step", std::to_string(m.optimizer->step));
        }

        std::string payload;
        const auto &p = m.net.parameters();
        append_f64(payload, std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
        if (m.optimizer)
        {
            if (m.optimizer->m.size() != p.size() || m.optimizer->v.size() != p.size())
                throw DomainError("model: optimizer state size differs from parameter count");
            append_f64(payload, std::span<const double>(m.optimizer->m.data(), static_cast<std::size_t>(p.size())));
            append_f64(payload, std::span<const double>(m.optimizer->v.data(), static_cast<std::size_t>(p.size())));
        }
        return encode_container(h, payload);
    }

    inline SurrogateModel decode_model(std::string_view bytes)
    {
        const auto c = decode_container(bytes, kModelMagic, kModelVersion);
        const auto &h = c.header;
        Architecture a;
        a.epochs = static_cast<int>(parse_int(h.get("epochs")));
        a.batch_size = static_cast<int>(parse_int(h.get("batch_size")));
        if (h.get("layers") != "-")
            for (auto item : split(h.get("layers"), ','))
            {
                const auto colon = item.find(':');
                if (colon == std::string_view::npos)
                    throw FormatError("model: malformed layer entry '" + std::string(item) + "'");
                a.layers.push_back({static_cast<int>(parse_int(item.substr(0, colon))), parse_activation(item.substr(colon + 1))});
            }

        SurrogateModel m;
        m.net = Mlp(a, static_cast<int>(parse_int(h.get("inputs"))), static_cast<int>(parse_int(h.get("outputs"))));
        const auto fp = from_hex(h.get("physics"));
        if (!fp)
            throw FormatError("model: malformed physics fingerprint");
        m.physics_fingerprint = *fp;
        m.scaling.amplitude_max = parse_double(h.get("amplitude_max"));
        m.scaling.power_min = parse_double(h.get("power_min"));
        m.scaling.power_max = parse_double(h.get("power_max"));
        if (to_hex(m.scaling.fingerprint()) != h.get("scaling"))
            throw FormatError("model: scaling fingerprint does not match stored scaling values");

        const auto count = static_cast<Eigen::Index>(parse_uint(h.get("parameters")));
        if (count != m.net.parameter_count())
            throw FormatError("model: parameter count does not match the architecture");
        const bool with_optimizer = h.has("adam_step");
        const auto expected = static_cast<std::size_t>(count) * 8 * (with_optimizer ? 3 : 1);
        if (c.payload.size() != expected)
            throw FormatError("model: payload size does not match the parameter count");

        ByteReader r(c.payload);
        auto read_vector = [&](Vector &v) {
            v.resize(count);
            for (Eigen::Index i = 0; i < count; ++i)
                v[i] = r.f64();
        };
        read_vector(m.net.parameters());
        if (!m.net.parameters().allFinite())
            throw FormatError("model: non-finite parameter");
        if (with_optimizer)
        {
            AdamState s;
            s.beta1 = parse_double(h.get("adam_beta1"));
            s.beta2 = parse_double(h.get("adam_beta2"));
            s.epsilon = parse_double(h.get("adam_epsilon"));
            s.step = parse_uint(h.get("adam_step"));
            read_vector(s.m);
            read_vector(s.v);
            m.optimizer = std::move(s);
        }
        return m;
    }

    inline void save_model(const SurrogateModel &m, const std::string &path) { write_file(path, encode_model(m)); }

    inline SurrogateModel load_model(const std::string &path) { return decode_model(read_file(path)); }

    /// Refuses a model whose training scaling or physics differ from a dataset's.
    inline void check_compatible(const SurrogateModel &m, const dataset::Dataset &ds)
    {
        if (m.scaling.fingerprint() != ds.scaling.fingerprint())
            throw FormatError("model scaling fingerprint " + to_hex(m.scaling.fingerprint()) +
                              " does not match dataset scaling " + to_hex(ds.scaling.fingerprint()));
        if (m.physics_fingerprint != ds.meta.physics_fingerprint)
            throw FormatError("model physics fingerprint does not match the dataset's");
    }
}

#endif

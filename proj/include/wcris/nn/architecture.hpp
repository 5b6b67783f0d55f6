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


#ifndef WCRIS_NN_ARCHITECTURE_HPP
#define WCRIS_NN_ARCHITECTURE_HPP

#include "../common/error.hpp"
#include "../common/hash.hpp"
#include "../common/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace wcris::nn
{
    enum class Activation
    {
        ReLU,
        PReLU,
        Sigmoid,
        Tanh
    };

    inline constexpr std::array<Activation, 4> kActivations = {Activation::ReLU, Activation::PReLU, Activation::Sigmoid,
                                                               Activation::Tanh};

    inline std::string to_string(Activation a)
    {
        switch (a)
        {
        case Activation::ReLU:
            return "relu";
        case Activation::PReLU:
            return "prelu";
        case Activation::Sigmoid:
            return "sigmoid";
        case Activation::Tanh:
            return "tanh";
        }
        return "?";
    }

    inline Activation parse_activation(std::string_view s)
    {
        std::string lower(s);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        for (auto a : kActivations)
            if (to_string(a) == lower)
                return a;
        throw FormatError("unknown activation '" + std::string(s) + "' (expected relu, prelu, sigmoid or tanh)");
    }

    /// Hyperparameter search space.
    namespace space
    {
        inline constexpr int kMinEpochs = 80;
        inline constexpr int kMaxEpochs = 200;
        inline constexpr std::array<int, 6> kBatchSizes = {32, 64, 128, 256, 512, 1024};
        inline constexpr int kMinLayers = 1;
        inline constexpr int kMaxLayers = 6;
        inline constexpr std::array<int, 6> kNodeCounts = {64, 128, 256, 512, 1024, 2048};
    }

    struct LayerSpec
    {
        int nodes = 64;
        Activation activation = Activation::ReLU;

        friend bool operator==(const LayerSpec &, const LayerSpec &) = default;
    };

    struct Architecture
    {
        int epochs = 100;
        int batch_size = 256;
        std::vector<LayerSpec> layers; ///< hidden layers; the linear output layer is implicit

        int depth() const { return static_cast<int>(layers.size()); }

        /// Structural sanity: anything a network can be built from.
        void validate_shape() const
        {
            if (epochs < 1)
                throw ConfigError("architecture: epochs must be positive");
            if (batch_size < 1)
                throw ConfigError("architecture: batch_size must be positive");
            for (const auto &l : layers)
                if (l.nodes < 1)
                    throw ConfigError("architecture: layer node counts must be positive");
        }

        bool in_search_space() const
        {
            auto has = [](const auto &set, int v) { return std::find(set.begin(), set.end(), v) != set.end(); };
            if (epochs < space::kMinEpochs || epochs > space::kMaxEpochs || !has(space::kBatchSizes, batch_size))
                return false;
            if (depth() < space::kMinLayers || depth() > space::kMaxLayers)
                return false;
            return std::all_of(layers.begin(), layers.end(), [&](const LayerSpec &l) { return has(space::kNodeCounts, l.nodes); });
        }

        /// Search-space membership, used for genomes.
        void validate() const
        {
            validate_shape();
            if (!in_search_space())
                throw ConfigError("architecture outside the search space (epochs 80..200, batch 32..1024 in powers "
                                  "of two, 1..6 layers of 64..2048 nodes)");
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("arch").value(static_cast<std::uint64_t>(epochs)).value(static_cast<std::uint64_t>(batch_size));
            for (const auto &l : layers)
                h.value(static_cast<std::uint64_t>(l.nodes)).text(to_string(l.activation));
        }

        friend bool operator==(const Architecture &, const Architecture &) = default;
    };

    /// Compact one-line form, e.g. "e120 b256 [256 relu, 512 tanh]".
    inline std::string describe(const Architecture &a)
    {
        std::string s = "e" + std::to_string(a.epochs) + " b" + std::to_string(a.batch_size) + " [";
        for (std::size_t i = 0; i < a.layers.size(); ++i)
            s += (i ? ", " : "") + std::to_string(a.layers[i].nodes) + " " + to_string(a.layers[i].activation);
        return s + "]";
    }

    /// Architecture record file:
    ///
    ///   epochs 120
    ///   batch_size 256
    ///   layer 256 relu
    ///   layer 512 tanh
    inline std::string format_architecture(const Architecture &a)
    {
        std::string s = "epochs " + std::to_string(a.epochs) + "\nbatch_size " + std::to_string(a.batch_size) + "\n";
        for (const auto &l : a.layers)
            s += "layer " + std::to_string(l.nodes) + " " + to_string(l.activation) + "\n";
        return s;
    }

    inline Architecture parse_architecture(std::istream &in)
    {
        Architecture a;
        a.layers.clear();
        bool have_epochs = false, have_batch = false;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto body = trim(std::string_view(line).substr(0, line.find('#')));
            if (body.empty())
                continue;
            std::istringstream fields{std::string(body)};
            std::string key, v1, v2, extra;
            fields >> key >> v1 >> v2 >> extra;
            const auto where = "architecture line " + std::to_string(line_no) + ": ";
            if (!extra.empty())
                throw FormatError(where + "too many fields");
            if (key == "epochs" && !v1.empty() && v2.empty())
            {
                a.epochs = static_cast<int>(parse_int(v1));
                have_epochs = true;
            }
            else if (key == "batch_size" && !v1.empty() && v2.empty())
            {
                a.batch_size = static_cast<int>(parse_int(v1));
                have_batch = true;
            }
            else if (key == "layer" && !v2.empty())
                a.layers.push_back({static_cast<int>(parse_int(v1)), parse_activation(v2)});
            else
                throw FormatError(where + "expected 'epochs <n>', 'batch_size <n>' or 'layer <nodes> <activation>'");
        }
        if (!have_epochs || !have_batch)
            throw FormatError("architecture: epochs and batch_size are required");
        a.validate_shape();
        return a;
    }

    inline Architecture parse_architecture(const std::string &text)
    {
        std::istringstream in(text);
        return parse_architecture(in);
    }
}

#endif

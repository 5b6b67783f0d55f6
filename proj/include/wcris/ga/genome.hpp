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


#ifndef WCRIS_GA_GENOME_HPP
#define WCRIS_GA_GENOME_HPP

#include "../common/rng.hpp"
#include "../nn/architecture.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace wcris::ga
{
    using nn::Architecture;
    using nn::LayerSpec;

    template <class Set>
    auto pick(Rng &rng, const Set &set)
    {
        return set[uniform_int<std::size_t>(rng, 0, set.size() - 1)];
    }

    /// Uniform draw from the search space: depth first, then each layer,
    /// then epochs and batch size.
    inline Architecture sample_genome(Rng &rng)
    {
        Architecture a;
        const int depth = uniform_int(rng, nn::space::kMinLayers, nn::space::kMaxLayers);
        a.layers.clear();
        for (int i = 0; i < depth; ++i)
        {
            LayerSpec l;
            l.nodes = pick(rng, nn::space::kNodeCounts);
            l.activation = pick(rng, nn::kActivations);
            a.layers.push_back(l);
        }
        a.epochs = uniform_int(rng, nn::space::kMinEpochs, nn::space::kMaxEpochs);
        a.batch_size = pick(rng, nn::space::kBatchSizes);
        return a;
    }

    /// Epochs, batch size and depth each come from a fair coin between the
    /// parents. Layer i comes from layer i of either parent while both have
    /// one; past the shallower parent's depth it is either the deeper
    /// parent's layer i or the shallower parent's last layer.
    inline Architecture crossover(const Architecture &a, const Architecture &b, Rng &rng)
    {
        auto coin = [&] { return uniform_int(rng, 0, 1) == 0; };
        Architecture child;
        child.epochs = coin() ? a.epochs : b.epochs;
        child.batch_size = coin() ? a.batch_size : b.batch_size;
        const int depth = coin() ? a.depth() : b.depth();
        const Architecture &shallow = a.depth() <= b.depth() ? a : b;
        const Architecture &deep = a.depth() <= b.depth() ? b : a;
        child.layers.clear();
        for (int i = 0; i < depth; ++i)
        {
            const auto k = static_cast<std::size_t>(i);
            if (i < shallow.depth())
                child.layers.push_back(coin() ? a.layers[k] : b.layers[k]);
            else
                child.layers.push_back(coin() ? deep.layers[k] : shallow.layers.back());
        }
        return child;
    }

    struct Mutation
    {
        bool applied = false;
        std::vector<int> node_order;       ///< new position i takes the node count of old layer node_order[i]
        std::vector<int> activation_order; ///< same for activations
    };

    /// Shuffles node counts and, independently, activations across the
    /// child's layers, but only when the child is deeper than the shallower
    /// parent. Otherwise the child is returned unchanged.
    inline Architecture mutate(const Architecture &child, const Architecture &parent_a, const Architecture &parent_b,
                               Rng &rng, Mutation *record = nullptr)
    {
        Mutation m;
        Architecture out = child;
        if (child.depth() > std::min(parent_a.depth(), parent_b.depth()))
        {
            m.applied = true;
            m.node_order.resize(child.layers.size());
            m.activation_order.resize(child.layers.size());
            std::iota(m.node_order.begin(), m.node_order.end(), 0);
            std::iota(m.activation_order.begin(), m.activation_order.end(), 0);
            std::shuffle(m.node_order.begin(), m.node_order.end(), rng);
            std::shuffle(m.activation_order.begin(), m.activation_order.end(), rng);
            for (std::size_t i = 0; i < out.layers.size(); ++i)
            {
                out.layers[i].nodes = child.layers[static_cast<std::size_t>(m.node_order[i])].nodes;
                out.layers[i].activation = child.layers[static_cast<std::size_t>(m.activation_order[i])].activation;
            }
        }
        if (record)
            *record = std::move(m);
        return out;
    }
}

#endif

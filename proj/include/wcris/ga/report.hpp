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


#ifndef WCRIS_GA_REPORT_HPP
#define WCRIS_GA_REPORT_HPP

#include "../dataset/dataset.hpp"
#include "../nn/train.hpp"
#include "evolve.hpp"

#include <json.hpp>

namespace wcris::ga
{
    using Json = nlohmann::ordered_json;

    /// Summary of a finished search.
    struct GaReport
    {
        int population = 0;
        std::uint64_t seed = 0;
        std::size_t models_trained = 0;
        double seconds = 0.0;
        std::vector<GenerationSummary> generations;
        Individual winner;
        std::vector<Individual> lineage;
    };

    inline GaReport ga_report(const GaResult &r)
    {
        return {r.config.population, r.config.seed, r.models_trained, r.seconds, r.generations, r.winner, r.lineage()};
    }

    inline Json architecture_to_json(const Architecture &a)
    {
        Json layers = Json::array();
        for (const auto &l : a.layers)
            layers.push_back({{"nodes", l.nodes}, {"activation", nn::to_string(l.activation)}});
        return {{"epochs", a.epochs}, {"batch_size", a.batch_size}, {"layers", layers}};
    }

    inline Architecture architecture_from_json(const Json &j)
    {
        Architecture a;
        a.epochs = j.at("epochs").get<int>();
        a.batch_size = j.at("batch_size").get<int>();
        a.layers.clear();
        for (const auto &l : j.at("layers"))
            a.layers.push_back({l.at("nodes").get<int>(), nn::parse_activation(l.at("activation").get<std::string>())});
        return a;
    }

    inline Json individual_to_json(const Individual &ind)
    {
        Json parents = Json::array();
        if (ind.parent_a)
            parents.push_back(*ind.parent_a);
        if (ind.parent_b)
            parents.push_back(*ind.parent_b);
        return {{"id", ind.id},           {"generation", ind.generation}, {"fitness", ind.fitness},
                {"failed", ind.failed},   {"mutated", ind.mutated},       {"parents", parents},
                {"architecture", architecture_to_json(ind.arch)}};
    }

    inline Individual individual_from_json(const Json &j)
    {
        Individual ind;
        ind.id = j.at("id").get<std::uint64_t>();
        ind.generation = j.at("generation").get<int>();
        ind.fitness = j.at("fitness").get<double>();
        ind.failed = j.at("failed").get<bool>();
        ind.mutated = j.at("mutated").get<bool>();
        const auto &parents = j.at("parents");
        if (parents.size() == 2)
        {
            ind.parent_a = parents[0].get<std::uint64_t>();
            ind.parent_b = parents[1].get<std::uint64_t>();
        }
        else if (!parents.empty())
            throw FormatError("ga report: an individual has either no parents or two");
        ind.arch = architecture_from_json(j.at("architecture"));
        return ind;
    }

    inline Json to_json(const GaReport &r)
    {
        Json gens = Json::array();
        for (const auto &g : r.generations)
            gens.push_back({{"generation", g.generation},
                            {"trained", g.trained},
                            {"population", g.members.size()},
                            {"best", g.best},
                            {"median", g.median},
                            {"members", g.members}});
        Json lineage = Json::array();
        for (const auto &ind : r.lineage)
            lineage.push_back(individual_to_json(ind));
        return {{"population", r.population},
                {"seed", r.seed},
                {"models_trained", r.models_trained},
                {"training_seconds", r.seconds},
                {"generations", gens},
                {"winner", individual_to_json(r.winner)},
                {"lineage", lineage}};
    }

    inline GaReport report_from_json(const Json &j)
    {
        try
        {
            GaReport r;
            r.population = j.at("population").get<int>();
            r.seed = j.at("seed").get<std::uint64_t>();
            r.models_trained = j.at("models_trained").get<std::size_t>();
            r.seconds = j.at("training_seconds").get<double>();
            for (const auto &g : j.at("generations"))
            {
                GenerationSummary s;
                s.generation = g.at("generation").get<int>();
                s.trained = g.at("trained").get<std::size_t>();
                s.best = g.at("best").get<double>();
                s.median = g.at("median").get<double>();
                s.members = g.at("members").get<std::vector<std::uint64_t>>();
                r.generations.push_back(std::move(s));
            }
            r.winner = individual_from_json(j.at("winner"));
            for (const auto &ind : j.at("lineage"))
                r.lineage.push_back(individual_from_json(ind));
            return r;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError(std::string("ga report: ") + e.what());
        }
    }

    /// Trainer that fits each genome on a normalized dataset and returns the
    /// best validation MSE. epoch_cap bounds the genome's epoch count.
    inline Trainer dataset_trainer(const dataset::NormalizedData &data, nn::TrainConfig base,
                                   std::function<void(const Architecture &, const nn::TrainReport &)> on_trained = {})
    {
        return [&data, base, on_trained](const Architecture &arch, std::uint64_t seed) {
            nn::TrainConfig cfg = base;
            cfg.seed = seed;
            const auto net = nn::init_mlp(arch, static_cast<int>(data.inputs.rows()),
                                          static_cast<int>(data.targets.rows()), seed);
            const auto result = nn::train(net, data.inputs, data.targets, cfg);
            if (on_trained)
                on_trained(arch, result.report);
            return result.report.best_val_mse;
        };
    }
}

#endif

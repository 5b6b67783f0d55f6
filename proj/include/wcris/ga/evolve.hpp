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


#ifndef WCRIS_GA_EVOLVE_HPP
#define WCRIS_GA_EVOLVE_HPP

#include "../common/error.hpp"
#include "genome.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace wcris::ga
{
    /// Fitness of a failed training run: worse than any real validation loss.
    inline constexpr double kWorstFitness = std::numeric_limits<double>::max();

    struct Individual
    {
        std::uint64_t id = 0; ///< lineage id, also the tie-breaker
        int generation = 0;
        Architecture arch;
        double fitness = kWorstFitness; ///< validation MSE, lower is better
        std::optional<std::uint64_t> parent_a;
        std::optional<std::uint64_t> parent_b;
        bool mutated = false;
        bool failed = false;
    };

    inline bool fitter(const Individual &x, const Individual &y)
    {
        return x.fitness != y.fitness ? x.fitness < y.fitness : x.id < y.id;
    }

    struct GaConfig
    {
        int population = 8; ///< R, a power of two >= 2
        std::uint64_t seed = 1;
        bool allow_self_pairing = true;
        double crossover_probability = 1.0;
        double mutation_probability = 1.0;
        unsigned threads = 1;

        void validate() const
        {
            if (population < 2 || (population & (population - 1)) != 0)
                throw ConfigError("ga: population must be a power of two >= 2");
            if (!(crossover_probability >= 0 && crossover_probability <= 1 && mutation_probability >= 0 &&
                  mutation_probability <= 1))
                throw ConfigError("ga: probabilities must lie in [0, 1]");
        }
    };

    /// Trains one architecture with the given seed and returns its validation loss.
    using Trainer = std::function<double(const Architecture &, std::uint64_t seed)>;

    struct GenerationSummary
    {
        int generation = 0;
        std::size_t trained = 0;         ///< models trained in this generation
        std::vector<std::uint64_t> members; ///< population after selection
        double best = 0.0;
        double median = 0.0;
    };

    struct GaResult
    {
        GaConfig config;
        Individual winner;
        std::vector<GenerationSummary> generations;
        std::vector<Individual> history; ///< every trained individual, by id
        std::size_t models_trained = 0;
        double seconds = 0.0;

        /// The winner and all of its ancestors, ordered by id.
        std::vector<Individual> lineage() const
        {
            std::vector<bool> keep(history.size(), false);
            std::vector<std::uint64_t> todo{winner.id};
            while (!todo.empty())
            {
                const auto id = todo.back();
                todo.pop_back();
                if (keep[id])
                    continue;
                keep[id] = true;
                if (history[id].parent_a)
                    todo.push_back(*history[id].parent_a);
                if (history[id].parent_b)
                    todo.push_back(*history[id].parent_b);
            }
            std::vector<Individual> out;
            for (std::size_t i = 0; i < history.size(); ++i)
                if (keep[i])
                    out.push_back(history[i]);
            return out;
        }
    };

    /// Seed handed to the trainer for individual id.
    inline std::uint64_t training_seed(std::uint64_t master, std::uint64_t id) { return mix64(master ^ mix64(id + 1)); }

    namespace detail
    {
        inline double median(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            const auto n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }

        inline void train_all(std::vector<Individual> &batch, const Trainer &trainer, const GaConfig &cfg)
        {
            auto run = [&](Individual &ind) {
                try
                {
                    const double f = trainer(ind.arch, training_seed(cfg.seed, ind.id));
                    if (std::isfinite(f))
                        ind.fitness = f;
                    else
                        ind.failed = true;
                }
                catch (const std::exception &)
                {
                    ind.failed = true;
                }
                if (ind.failed)
                    ind.fitness = kWorstFitness;
            };
            const unsigned threads = std::min<unsigned>(std::max(1u, cfg.threads), static_cast<unsigned>(batch.size()));
            if (threads <= 1)
            {
                for (auto &ind : batch)
                    run(ind);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < batch.size(); i = next++)
                        run(batch[i]);
                });
            for (auto &th : pool)
                th.join();
        }

        inline GenerationSummary summarize(int generation, std::size_t trained, const std::vector<Individual> &pop)
        {
            GenerationSummary s;
            s.generation = generation;
            s.trained = trained;
            std::vector<double> f;
            for (const auto &ind : pop)
            {
                s.members.push_back(ind.id);
                f.push_back(ind.fitness);
            }
            s.best = *std::min_element(f.begin(), f.end());
            s.median = median(f);
            return s;
        }
    }

    /// Generational search. Generation 0 trains R random genomes. Every
    /// later generation draws R_g/2 parent pairs uniformly with replacement,
    /// breeds two children per pair, trains them and keeps the fittest R_g/2
    /// of parents and children. Stops when one individual remains.
    inline GaResult evolve(const GaConfig &cfg, const Trainer &trainer,
                           const std::function<void(const GenerationSummary &)> &on_generation = {})
    {
        cfg.validate();
        const auto t0 = std::chrono::steady_clock::now();
        GaResult result;
        result.config = cfg;
        std::uint64_t next_id = 0;

        std::vector<Individual> pop;
        for (int i = 0; i < cfg.population; ++i)
        {
            Individual ind;
            ind.id = next_id++;
            Rng rng = make_stream(cfg.seed, ind.id);
            ind.arch = sample_genome(rng);
            pop.push_back(std::move(ind));
        }
        detail::train_all(pop, trainer, cfg);
        result.history = pop;
        result.models_trained = pop.size();
        std::sort(pop.begin(), pop.end(), fitter);
        result.generations.push_back(detail::summarize(0, pop.size(), pop));
        if (on_generation)
            on_generation(result.generations.back());

        for (int g = 1; pop.size() > 1; ++g)
        {
            // pair selection is sequential; each child then uses its own stream
            Rng select = make_stream(cfg.seed, (std::uint64_t{1} << 48) + static_cast<std::uint64_t>(g));
            const std::size_t n = pop.size();
            std::vector<Individual> children;
            for (std::size_t p = 0; p < n / 2; ++p)
            {
                const auto ia = uniform_int<std::size_t>(select, 0, n - 1);
                auto ib = uniform_int<std::size_t>(select, 0, n - 1);
                while (!cfg.allow_self_pairing && ib == ia)
                    ib = uniform_int<std::size_t>(select, 0, n - 1);
                const auto &a = pop[ia];
                const auto &b = pop[ib];
                for (int c = 0; c < 2; ++c)
                {
                    Individual child;
                    child.id = next_id++;
                    child.generation = g;
                    child.parent_a = a.id;
                    child.parent_b = b.id;
                    Rng rng = make_stream(cfg.seed, child.id);
                    if (uniform01(rng) < cfg.crossover_probability)
                        child.arch = crossover(a.arch, b.arch, rng);
                    else
                        child.arch = uniform_int(rng, 0, 1) == 0 ? a.arch : b.arch;
                    if (uniform01(rng) < cfg.mutation_probability)
                    {
                        Mutation m;
                        child.arch = mutate(child.arch, a.arch, b.arch, rng, &m);
                        child.mutated = m.applied;
                    }
                    children.push_back(std::move(child));
                }
            }
            detail::train_all(children, trainer, cfg);
            result.models_trained += children.size();
            result.history.insert(result.history.end(), children.begin(), children.end());

            std::vector<Individual> pool = std::move(pop);
            pool.insert(pool.end(), children.begin(), children.end());
            std::sort(pool.begin(), pool.end(), fitter);
            pool.resize(n / 2);
            pop = std::move(pool);
            result.generations.push_back(detail::summarize(g, children.size(), pop));
            if (on_generation)
                on_generation(result.generations.back());
        }

        result.winner = pop.front();
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }
}

#endif

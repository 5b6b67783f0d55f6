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

#ifndef WCRIS_DATASET_GENERATE_HPP
#define WCRIS_DATASET_GENERATE_HPP

#include "../common/text.hpp"
#include "../physics/pattern.hpp"
#include "dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

namespace wcris::dataset
{
    /// Random candidate amplitudes: every entry |N(0, sigma1^2)|, then a
    /// uniformly sized random subset of k in [1, N] distinct entries is
    /// overwritten with |N(0, sigma2^2)|.
    inline std::vector<double> draw_candidate_w(Rng &rng, int harmonics, double sigma1, double sigma2)
    {
        require(harmonics >= 1, "draw_candidate_w: need at least one harmonic");
        require(sigma1 > 0 && sigma2 > 0, "draw_candidate_w: standard deviations must be positive");
        std::vector<double> w(static_cast<std::size_t>(harmonics));
        std::normal_distribution<double> small(0.0, sigma1);
        for (auto &x : w)
            x = std::abs(small(rng));

        const int k = uniform_int(rng, 1, harmonics);
        std::vector<int> idx(static_cast<std::size_t>(harmonics));
        std::iota(idx.begin(), idx.end(), 0);
        // partial Fisher-Yates: the first k slots become a uniform k-subset
        for (int i = 0; i < k; ++i)
        {
            const int j = uniform_int(rng, i, harmonics - 1);
            std::swap(idx[i], idx[j]);
        }
        std::normal_distribution<double> large(0.0, sigma2);
        for (int i = 0; i < k; ++i)
            w[idx[i]] = std::abs(large(rng));
        return w;
    }

    struct GenerationOptions
    {
        std::size_t count = 100000; ///< N_max
        std::uint64_t seed = 1;
        double sigma1 = 0.008;
        double sigma2 = 0.8;
        unsigned threads = 1;
        /// Abort when fewer than min_acceptance of a window of draws pass.
        std::size_t window = 10000;
        double min_acceptance = 1e-3;
    };

    namespace detail
    {
        inline double to_f32(double v) { return static_cast<double>(static_cast<float>(v)); }

        struct AcceptanceWindow
        {
            std::size_t window;
            double min_rate;
            std::size_t draws = 0;
            std::size_t accepted = 0;

            void record(bool ok)
            {
                ++draws;
                accepted += ok ? 1 : 0;
                if (draws == window)
                {
                    if (static_cast<double>(accepted) < min_rate * static_cast<double>(window))
                        throw RejectedConfiguration(
                            "dataset generation: acceptance rate " +
                            format_double(static_cast<double>(accepted) / static_cast<double>(window)) + " over " +
                            std::to_string(window) + " draws is below " + format_double(min_rate) +
                            "; check bias offset, bounds and sigma2");
                    draws = accepted = 0;
                }
            }
        };
    }

    /// Builds exactly opt.count accepted samples. Sample i draws from its own
    /// stream keyed by (seed, i), so the result does not depend on the thread
    /// count or on how many redraws other samples needed. Amplitudes and powers
    /// are rounded to float32, the storage precision, before use.
    inline Dataset generate_dataset(const physics::PatternSimulator &sim, const GenerationOptions &opt,
                                    const std::function<void(std::size_t)> &progress = {})
    {
        const int harmonics = sim.harmonics();
        Dataset ds;
        ds.samples.resize(opt.count);
        std::vector<std::uint64_t> rejected(opt.count, 0);

        auto make_sample = [&](std::size_t i, detail::AcceptanceWindow &window) {
            Rng rng = make_stream(opt.seed, i);
            while (true)
            {
                auto w = draw_candidate_w(rng, harmonics, opt.sigma1, opt.sigma2);
                for (auto &x : w)
                    x = detail::to_f32(x);
                const auto bsw = sim.config(w);
                const auto profile = sim.bias(bsw);
                const bool ok = sim.in_bounds(profile);
                window.record(ok);
                if (!ok)
                {
                    ++rejected[i];
                    continue;
                }
                auto p = sim.pattern_db(sim.reflections(profile));
                for (auto &x : p)
                    x = detail::to_f32(x);
                ds.samples[i] = DatasetSample{std::move(w), std::move(p)};
                return;
            }
        };

        const unsigned threads = std::max(1u, opt.threads);
        if (threads == 1)
        {
            detail::AcceptanceWindow window{opt.window, opt.min_acceptance};
            for (std::size_t i = 0; i < opt.count; ++i)
            {
                make_sample(i, window);
                if (progress)
                    progress(i + 1);
            }
        }
        else
        {
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    detail::AcceptanceWindow window{opt.window, opt.min_acceptance};
                    try
                    {
                        for (std::size_t i = next++; i < opt.count; i = next++)
                            make_sample(i, window);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next = opt.count;
                    }
                });
            for (auto &th : pool)
                th.join();
            if (failure)
                std::rethrow_exception(failure);
            if (progress)
                progress(opt.count);
        }

        ds.scaling = compute_scaling(ds.samples);
        ds.meta.physics_fingerprint = sim.model().fingerprint();
        ds.meta.seed = opt.seed;
        ds.meta.sigma1 = opt.sigma1;
        ds.meta.sigma2 = opt.sigma2;
        ds.meta.rejected = std::accumulate(rejected.begin(), rejected.end(), std::uint64_t{0});
        ds.meta.harmonics = harmonics;
        ds.meta.grid = sim.grid();
        return ds;
    }
}

#endif

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


#ifndef WCRIS_OPTIMIZE_ANNEAL_HPP
#define WCRIS_OPTIMIZE_ANNEAL_HPP

#include "../common/rng.hpp"
#include "backend.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace wcris::optimize
{
    struct SaParams
    {
        double cooling = 0.002;         ///< k_c
        int iterations = 2000;          ///< i_max
        double step = 0.015;            ///< lambda
        int restart_patience = 200;     ///< i_rst
        double temperature_scale = 100; ///< T_scale
        std::optional<SignMode> sign_mode; ///< unset: the backend's default
        bool linear_acceptance = false;    ///< compare SLNRs in linear units instead of dB

        void validate() const
        {
            if (!(cooling > 0 && temperature_scale > 0 && step >= 0 && iterations > 0 && restart_patience > 0))
                throw ConfigError("sa: cooling, temperature scale, iterations and restart patience must be positive, "
                                  "step non-negative");
            if (restart_patience >= iterations)
                throw ConfigError("sa: restart patience must be below the iteration budget");
        }
    };

    /// Probability of moving from the current SLNR to a proposal.
    inline double acceptance_probability(double current, double proposal, double temperature, double cooling,
                                         bool linear = false)
    {
        if (proposal > current)
            return 1.0;
        if (temperature <= 1e-12)
            return 0.0;
        const double gap = linear ? physics::from_db(current) - physics::from_db(proposal) : current - proposal;
        return std::exp(-gap / (cooling * temperature));
    }

    struct SaStep
    {
        double temperature = 0.0;
        double proposal = std::numeric_limits<double>::quiet_NaN(); ///< NaN when the proposal was infeasible
        double current = 0.0;                                        ///< after the step
        double best = 0.0;                                           ///< after the step
        bool accepted = false;
        bool restarted = false; ///< chain reset to the best point before proposing
    };

    struct SaResult
    {
        std::vector<double> w;
        double slnr_db = 0.0;
        double initial_slnr_db = 0.0;
        std::vector<SaStep> trace;
    };

    inline SignMode effective_sign_mode(const Backend &backend, const SaParams &params)
    {
        const SignMode mode = params.sign_mode.value_or(backend.default_sign_mode());
        if (mode == SignMode::Signed && !backend.allows_signed())
            throw ConfigError(backend.name() + " backend only accepts non-negative amplitudes");
        return mode;
    }

    /// Simulated annealing on the SLNR. The chain starts at w_init, proposes
    /// w + lambda * eps (folded to |.| in non-negative mode), accepts by the
    /// temperature rule, and jumps back to the best point after
    /// restart_patience iterations without a new best.
    inline SaResult sa_optimize(const Backend &backend, const Objective &objective, const SaParams &params,
                                std::span<const double> w_init, Rng &rng)
    {
        params.validate();
        objective.validate(backend.grid());
        const SignMode mode = effective_sign_mode(backend, params);
        if (static_cast<int>(w_init.size()) != backend.harmonics())
            throw DomainError("sa: initial amplitude vector has the wrong length");
        if (mode == SignMode::NonNegative)
            for (double x : w_init)
                if (x < 0.0)
                    throw DomainError("sa: negative initial amplitude in non-negative mode");

        std::vector<double> w(w_init.begin(), w_init.end());
        double current = evaluate_slnr(backend, w, objective);
        SaResult result;
        result.initial_slnr_db = current;
        std::vector<double> best_w = w;
        double best = current;
        int i_best = 0;
        result.trace.reserve(static_cast<std::size_t>(params.iterations));

        std::normal_distribution<double> noise(0.0, 1.0);
        std::vector<double> proposal(w.size());
        for (int i = 0; i < params.iterations; ++i)
        {
            SaStep step;
            if (i - i_best >= params.restart_patience)
            {
                w = best_w;
                i_best = i;
                current = best;
                step.restarted = true;
            }
            const double t = params.temperature_scale * (1.0 - static_cast<double>(i) / params.iterations);
            step.temperature = t;
            for (std::size_t n = 0; n < w.size(); ++n)
            {
                const double moved = w[n] + params.step * noise(rng);
                proposal[n] = mode == SignMode::NonNegative ? std::abs(moved) : moved;
            }

            std::optional<double> value;
            try
            {
                value = evaluate_slnr(backend, proposal, objective);
            }
            catch (const RejectedConfiguration &)
            {
            }

            if (value)
            {
                step.proposal = *value;
                if (*value > best)
                {
                    current = best = *value;
                    w = best_w = proposal;
                    i_best = i;
                    step.accepted = true;
                }
                else if (acceptance_probability(current, *value, t, params.cooling, params.linear_acceptance) >=
                         uniform01(rng))
                {
                    w = proposal;
                    current = *value;
                    step.accepted = true;
                }
            }
            step.current = current;
            step.best = best;
            result.trace.push_back(step);
        }
        result.w = std::move(best_w);
        result.slnr_db = best;
        return result;
    }
}

#endif

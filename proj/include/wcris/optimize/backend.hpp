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


#ifndef WCRIS_OPTIMIZE_BACKEND_HPP
#define WCRIS_OPTIMIZE_BACKEND_HPP

#include "../nn/model_io.hpp"
#include "../physics/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcris::optimize
{
    /// Power at an arbitrary angle from grid samples by convex combination of
    /// the two neighbouring dB values.
    inline double interpolated_power(std::span<const double> powers_db, double theta, const physics::AngleGrid &grid)
    {
        if (static_cast<int>(powers_db.size()) != grid.count)
            throw DomainError("interpolated_power: sample count differs from the angle grid");
        if (!grid.contains(theta))
            throw DomainError("interpolated_power: angle " + format_double(theta) + " outside [" +
                              format_double(grid.min_deg) + ", " + format_double(grid.max_deg) + "]");
        const double index = (theta - grid.min_deg) * (grid.count - 1) / (grid.max_deg - grid.min_deg);
        const auto lower = std::min(static_cast<std::size_t>(std::floor(index)), powers_db.size() - 1);
        const double frac = index - static_cast<double>(lower);
        if (frac == 0.0)
            return powers_db[lower];
        return (1.0 - frac) * powers_db[lower] + frac * powers_db[lower + 1];
    }

    /// Beam and null directions of one SLNR objective, in degrees.
    struct Objective
    {
        std::vector<double> beams;
        std::vector<double> nulls;
        double noise_variance = 1.0;

        void validate(const physics::AngleGrid &grid) const
        {
            if (beams.empty())
                throw DomainError("objective: at least one beam direction is required");
            if (!(noise_variance > 0.0))
                throw DomainError("objective: noise variance must be positive");
            for (const auto *list : {&beams, &nulls})
                for (double t : *list)
                    if (!grid.contains(t))
                        throw DomainError("objective: direction " + format_double(t) + " outside the sampled range [" +
                                          format_double(grid.min_deg) + ", " + format_double(grid.max_deg) + "]");
            for (double b : beams)
                if (std::find(nulls.begin(), nulls.end(), b) != nulls.end())
                    throw DomainError("objective: direction " + format_double(b) + " is both a beam and a null");
        }
    };

    enum class SignMode
    {
        NonNegative,
        Signed
    };

    /// Something that maps amplitudes W to received powers.
    class Backend
    {
    public:
        virtual ~Backend() = default;

        virtual std::string name() const = 0;
        virtual int harmonics() const = 0;
        virtual const physics::AngleGrid &grid() const = 0;
        virtual std::uint64_t fingerprint() const = 0;
        virtual bool allows_signed() const = 0;
        virtual SignMode default_sign_mode() const = 0;

        /// Received power [dB] toward each direction.
        virtual std::vector<double> powers_db(std::span<const double> w, std::span<const double> directions) const = 0;

        /// Received power [dB] on every grid angle.
        virtual std::vector<double> grid_powers_db(std::span<const double> w) const = 0;

    protected:
        void check_width(std::span<const double> w) const
        {
            if (static_cast<int>(w.size()) != harmonics())
                throw DomainError(name() + " backend: expected " + std::to_string(harmonics()) + " amplitudes, got " +
                                  std::to_string(w.size()));
        }
    };

    /// Physics simulator. Samples any direction directly.
    class ExactBackend final : public Backend
    {
    public:
        explicit ExactBackend(physics::PhysicsModel model) : sim_(std::move(model)) {}

        std::string name() const override { return "sim"; }
        int harmonics() const override { return sim_.harmonics(); }
        const physics::AngleGrid &grid() const override { return sim_.grid(); }
        std::uint64_t fingerprint() const override { return sim_.model().fingerprint(); }
        bool allows_signed() const override { return true; }
        SignMode default_sign_mode() const override { return SignMode::Signed; }
        const physics::PatternSimulator &simulator() const { return sim_; }

        std::vector<double> powers_db(std::span<const double> w, std::span<const double> directions) const override
        {
            check_width(w);
            return sim_.powers_db(sim_.config(w), directions);
        }

        std::vector<double> grid_powers_db(std::span<const double> w) const override
        {
            check_width(w);
            return sim_.pattern_db(sim_.config(w));
        }

    private:
        physics::PatternSimulator sim_;
    };

    /// Trained network. Amplitudes are scaled in, powers de-scaled out, and
    /// off-grid directions interpolated.
    ///
    /// The network knows nothing about the varactor range. When a physics
    /// model is supplied, each W is first run through its bias synthesizer
    /// and refused (RejectedConfiguration) if the rectified bias leaves the
    /// bounds; no radiation pattern is computed for that check.
    class SurrogateBackend final : public Backend
    {
    public:
        SurrogateBackend(nn::SurrogateModel model, physics::AngleGrid grid,
                         std::optional<physics::PhysicsModel> bias_limits = std::nullopt)
            : model_(std::move(model)), grid_(grid)
        {
            if (bias_limits)
                limits_.emplace(*bias_limits);
            model_.scaling.validate();
            grid_.validate();
            if (model_.net.output_width() != grid_.count)
                throw FormatError("surrogate: network has " + std::to_string(model_.net.output_width()) +
                                  " outputs but the angle grid has " + std::to_string(grid_.count) + " angles");
            Fnv1a h;
            h.text("surrogate").value(model_.scaling.fingerprint()).value(model_.physics_fingerprint);
            model_.net.architecture().fingerprint(h);
            const auto &p = model_.net.parameters();
            h.values(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
            grid_.fingerprint(h);
            if (limits_)
                h.text("bias-limits").value(limits_->model().fingerprint());
            fingerprint_ = h.digest();
        }

        std::string name() const override { return "nn"; }
        bool checks_bias_limits() const { return limits_.has_value(); }
        int harmonics() const override { return model_.net.input_width(); }
        const physics::AngleGrid &grid() const override { return grid_; }
        std::uint64_t fingerprint() const override { return fingerprint_; }
        bool allows_signed() const override { return false; }
        SignMode default_sign_mode() const override { return SignMode::NonNegative; }
        const nn::SurrogateModel &model() const { return model_; }

        std::vector<double> grid_powers_db(std::span<const double> w) const override
        {
            check_width(w);
            nn::Vector x(static_cast<Eigen::Index>(w.size()));
            for (std::size_t i = 0; i < w.size(); ++i)
            {
                if (w[i] < 0.0)
                    throw DomainError("surrogate backend: amplitudes must be non-negative");
                x[static_cast<Eigen::Index>(i)] = model_.scaling.scale_amplitude(w[i]);
            }
            if (limits_ && !limits_->in_bounds(limits_->bias(limits_->config(w))))
                throw RejectedConfiguration("surrogate backend: bias profile leaves the varactor range");
            const nn::Vector y = nn::forward(model_.net, x);
            std::vector<double> out(static_cast<std::size_t>(y.size()));
            for (Eigen::Index i = 0; i < y.size(); ++i)
                out[static_cast<std::size_t>(i)] = model_.scaling.unscale_power(y[i]);
            return out;
        }

        std::vector<double> powers_db(std::span<const double> w, std::span<const double> directions) const override
        {
            const auto grid_powers = grid_powers_db(w);
            std::vector<double> out;
            out.reserve(directions.size());
            for (double t : directions)
                out.push_back(interpolated_power(grid_powers, t, grid_));
            return out;
        }

    private:
        nn::SurrogateModel model_;
        physics::AngleGrid grid_;
        std::optional<physics::PatternSimulator> limits_;
        std::uint64_t fingerprint_ = 0;
    };

    /// SLNR [dB] of amplitudes w under the objective. Powers from the backend
    /// are in dB relative to unit noise.
    inline double evaluate_slnr(const Backend &backend, std::span<const double> w, const Objective &objective)
    {
        objective.validate(backend.grid());
        std::vector<double> directions = objective.beams;
        directions.insert(directions.end(), objective.nulls.begin(), objective.nulls.end());
        const auto db = backend.powers_db(w, directions);
        std::vector<double> beams, nulls;
        for (std::size_t i = 0; i < db.size(); ++i)
            (i < objective.beams.size() ? beams : nulls).push_back(physics::from_db(db[i]));
        return physics::slnr_db(beams, nulls, objective.noise_variance);
    }
}

#endif

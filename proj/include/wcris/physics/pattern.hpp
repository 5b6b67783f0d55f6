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

#ifndef WCRIS_PHYSICS_PATTERN_HPP
#define WCRIS_PHYSICS_PATTERN_HPP

#include "bias.hpp"
#include "channel.hpp"
#include "circuit.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace wcris::physics
{
    /// Everything the exact simulator needs: surface, unit cell, link and
    /// the admissible varactor bias window.
    struct PhysicsModel
    {
        RisGeometry geometry;
        UnitCellCircuit cell;
        ChannelSetup channel;
        double bias_offset = 4.0; ///< W_0
        double bias_low = kDefaultBiasLow;
        double bias_high = kDefaultBiasHigh;

        void validate() const
        {
            geometry.validate();
            cell.validate();
            channel.validate();
            require(bias_low < bias_high, "physics: bias_low must be below bias_high");
        }

        std::uint64_t fingerprint() const
        {
            Fnv1a h;
            geometry.fingerprint(h);
            cell.fingerprint(h);
            channel.fingerprint(h);
            h.text("bias").value(bias_offset).value(bias_low).value(bias_high);
            return h.digest();
        }
    };

    /// Exact W -> radiation pattern map with per-model precomputation.
    /// Immutable after construction; safe to share between threads.
    class PatternSimulator
    {
    public:
        explicit PatternSimulator(PhysicsModel model) : model_(std::move(model)), synth_((model_.validate(), model_.geometry))
        {
            const auto &g = model_.geometry;
            const auto angles = model_.channel.grid.angles();
            steering_.reserve(angles.size());
            for (double theta : angles)
                steering_.push_back(steering_vector(theta, g.elements, g.spacing, model_.channel.carrier_frequency));
            lo_ = std::max(model_.bias_low, model_.cell.curve.min_voltage());
            hi_ = std::min(model_.bias_high, model_.cell.curve.max_voltage());
        }

        const PhysicsModel &model() const { return model_; }
        const BiasSynthesizer &synthesizer() const { return synth_; }
        const AngleGrid &grid() const { return model_.channel.grid; }
        int harmonics() const { return model_.geometry.harmonics; }

        BswConfig config(std::span<const double> amplitudes) const
        {
            return BswConfig{model_.bias_offset, std::vector<double>(amplitudes.begin(), amplitudes.end())};
        }

        std::vector<double> bias(const BswConfig &bsw) const { return synth_.profile(bsw); }

        bool in_bounds(std::span<const double> profile) const { return check_bias_bounds(profile, lo_, hi_); }

        /// Per-element Gamma; throws RejectedConfiguration when any bias is out of range.
        std::vector<Complex> reflections(std::span<const double> profile) const
        {
            if (!in_bounds(profile))
                throw RejectedConfiguration("bias profile leaves the varactor range [" + format_double(lo_) + ", " +
                                            format_double(hi_) + "] V");
            const double omega = model_.channel.omega();
            std::vector<Complex> gamma(profile.size());
            for (std::size_t m = 0; m < profile.size(); ++m)
                gamma[m] = reflection_coefficient(model_.cell, omega, profile[m]);
            return gamma;
        }

        std::vector<Complex> reflections(const BswConfig &bsw) const { return reflections(bias(bsw)); }

        /// Received SNR [dB] on every grid angle.
        std::vector<double> pattern_db(const BswConfig &bsw) const { return pattern_db(reflections(bsw)); }

        std::vector<double> pattern_db(std::span<const Complex> gamma) const
        {
            std::vector<double> out(steering_.size());
            const auto &ch = model_.channel;
            for (std::size_t k = 0; k < steering_.size(); ++k)
            {
                Complex sum = 0.0;
                for (std::size_t m = 0; m < gamma.size(); ++m)
                    sum += steering_[k][m] * gamma[m];
                out[k] = to_db(ch.symbol_power * std::norm(sum) / ch.noise_variance);
            }
            return out;
        }

        /// Received SNR [dB] at arbitrary directions, not confined to the grid.
        std::vector<double> powers_db(const BswConfig &bsw, std::span<const double> directions) const
        {
            const auto gamma = reflections(bsw);
            std::vector<double> out;
            out.reserve(directions.size());
            for (double theta : directions)
                out.push_back(received_power_db(gamma, theta, model_.geometry.spacing, model_.channel));
            return out;
        }

    private:
        PhysicsModel model_;
        BiasSynthesizer synth_;
        std::vector<std::vector<Complex>> steering_;
        double lo_ = 0.0;
        double hi_ = 0.0;
    };

    /// Sampled radiation pattern of one configuration (convenience form).
    inline std::vector<double> radiation_pattern(const RisGeometry &geom, const UnitCellCircuit &cell,
                                                 const BswConfig &bsw, const ChannelSetup &setup)
    {
        PhysicsModel model{geom, cell, setup, bsw.offset};
        return PatternSimulator(std::move(model)).pattern_db(bsw);
    }
}

#endif

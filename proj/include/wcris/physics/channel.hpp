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

#ifndef WCRIS_PHYSICS_CHANNEL_HPP
#define WCRIS_PHYSICS_CHANNEL_HPP

#include "../common/error.hpp"
#include "../common/hash.hpp"
#include "circuit.hpp"
#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace wcris::physics
{
    /// Uniform azimuth grid [min_deg, max_deg] with `count` samples.
    struct AngleGrid
    {
        double min_deg = -60.0;
        double max_deg = 60.0;
        int count = 81;

        double angle(int i) const
        {
            if (i == count - 1)
                return max_deg;
            return min_deg + (max_deg - min_deg) * i / (count - 1);
        }

        std::vector<double> angles() const
        {
            std::vector<double> out(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i)
                out[i] = angle(i);
            return out;
        }

        bool contains(double theta) const { return theta >= min_deg && theta <= max_deg; }

        void validate() const
        {
            require(count >= 2, "angle grid: need at least two angles");
            require(min_deg < max_deg, "angle grid: min must be below max");
            require(min_deg >= -90.0 && max_deg <= 90.0, "angle grid: angles must lie in [-90, 90] degrees");
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("grid").value(min_deg).value(max_deg).value(static_cast<std::uint64_t>(count));
        }

        friend bool operator==(const AngleGrid &, const AngleGrid &) = default;
    };

    /// Narrowband far-field line-of-sight link through the surface.
    struct ChannelSetup
    {
        double carrier_frequency = 2.45e9; ///< f_c, Hz
        double symbol_power = 1.0;         ///< rho_s
        double noise_variance = 1.0;       ///< sigma_s^2
        AngleGrid grid;

        double omega() const { return 2.0 * std::numbers::pi * carrier_frequency; }

        void validate() const
        {
            require(carrier_frequency > 0 && symbol_power > 0 && noise_variance > 0,
                    "channel: carrier frequency, symbol power and noise variance must be positive");
            grid.validate();
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("channel").value(carrier_frequency).value(symbol_power).value(noise_variance);
            grid.fingerprint(h);
        }
    };

    inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

    /// kappa(theta) = 2 pi (d_x f_c / c) sin(theta): phase step between elements.
    inline double phase_step(double theta_deg, double spacing, double carrier_frequency)
    {
        return 2.0 * std::numbers::pi * (spacing * carrier_frequency / kSpeedOfLight) *
               std::sin(degrees_to_radians(theta_deg));
    }

    /// h(theta)[m] = exp(-j m kappa(theta)), m = 0..M-1.
    inline std::vector<Complex> steering_vector(double theta_deg, int elements, double spacing, double carrier_frequency)
    {
        require(std::abs(theta_deg) <= 90.0, "steering_vector: |theta| must be <= 90 degrees");
        const double kappa = phase_step(theta_deg, spacing, carrier_frequency);
        std::vector<Complex> h(static_cast<std::size_t>(elements));
        for (int m = 0; m < elements; ++m)
            h[m] = std::polar(1.0, -m * kappa);
        return h;
    }

    /// rho_s |h^T diag(Gamma) g|^2 with g = all ones (transmitter at broadside).
    inline double received_power_linear(std::span<const Complex> gamma, double theta_deg, double spacing,
                                        const ChannelSetup &setup)
    {
        const auto h = steering_vector(theta_deg, static_cast<int>(gamma.size()), spacing, setup.carrier_frequency);
        Complex sum = 0.0;
        for (std::size_t m = 0; m < gamma.size(); ++m)
            sum += h[m] * gamma[m];
        return setup.symbol_power * std::norm(sum);
    }

    inline double to_db(double linear) { return 10.0 * std::log10(std::max(linear, kPowerFloor)); }
    inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

    /// Received SNR in dB, floored at -120 dB so exact nulls stay finite.
    inline double received_power_db(std::span<const Complex> gamma, double theta_deg, double spacing,
                                    const ChannelSetup &setup)
    {
        return to_db(received_power_linear(gamma, theta_deg, spacing, setup) / setup.noise_variance);
    }

    /// min(beam powers) / (max(null powers) + sigma^2), in dB. Powers linear.
    inline double slnr_db(std::span<const double> beam_powers, std::span<const double> null_powers,
                          double noise_variance)
    {
        if (beam_powers.empty())
            throw DomainError("slnr: at least one beam direction is required");
        const double signal = *std::min_element(beam_powers.begin(), beam_powers.end());
        const double leakage =
            null_powers.empty() ? 0.0 : *std::max_element(null_powers.begin(), null_powers.end());
        return to_db(signal / (leakage + noise_variance));
    }
}

#endif

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

#ifndef WCRIS_PHYSICS_GEOMETRY_HPP
#define WCRIS_PHYSICS_GEOMETRY_HPP

#include "../common/error.hpp"
#include "../common/hash.hpp"
#include "constants.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace wcris::physics
{
    /// Layout of a single-row surface and of the biasing transmission line
    /// running underneath it. Lengths in meters, measured along x.
    struct RisGeometry
    {
        int elements = 100;           ///< M
        double spacing = 0.020;       ///< d_x, element period
        double path_length = 0.13142; ///< L_p, TL path between adjacent rectifiers
        double left_length = 0.5 * 0.020;
        double right_length = 0.020 * (100.5 + 50.0 / 131.42);
        double eps_eff = 8.66;
        int harmonics = 25; ///< N

        /// Biased span L = (M-1) d_x.
        double span() const { return (elements - 1) * spacing; }
        double total_length() const { return left_length + span() + right_length; }
        double effective_index() const { return std::sqrt(eps_eff); }
        double slowness() const { return path_length / spacing * effective_index(); }
        double phase_velocity() const { return kSpeedOfLight / slowness(); }

        /// Fundamental BSW frequency, resonant with the total line length.
        double fundamental_frequency() const { return phase_velocity() / (2.0 * total_length()); }
        double fundamental_angular_frequency() const { return 2.0 * std::numbers::pi * fundamental_frequency(); }

        double element_position(int m) const { return m * spacing; }

        void validate() const
        {
            require(elements >= 1, "geometry: element count must be >= 1");
            require(harmonics >= 1, "geometry: harmonic count must be >= 1");
            require(spacing > 0 && path_length > 0 && left_length > 0 && right_length > 0,
                    "geometry: all lengths must be positive");
            require(eps_eff >= 1.0, "geometry: effective permittivity must be >= 1");
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("geometry").value(static_cast<std::uint64_t>(elements)).value(spacing).value(path_length);
            h.value(left_length).value(right_length).value(eps_eff).value(static_cast<std::uint64_t>(harmonics));
        }
    };

    /// DC offset plus the N standing-wave amplitudes driving the biasing line.
    struct BswConfig
    {
        double offset = 4.0;            ///< W_0 in volts
        std::vector<double> amplitudes; ///< W_1..W_N in volts

        static BswConfig zeros(int harmonics, double offset = 4.0)
        {
            return BswConfig{offset, std::vector<double>(static_cast<std::size_t>(harmonics), 0.0)};
        }
    };

    inline void check_config(const RisGeometry &geom, const BswConfig &bsw)
    {
        if (static_cast<int>(bsw.amplitudes.size()) != geom.harmonics)
            throw DomainError("BSW amplitude vector has length " + std::to_string(bsw.amplitudes.size()) +
                              ", geometry expects " + std::to_string(geom.harmonics));
    }

    /// sin(n pi (x + L_left) / L_tot), the spatial shape of harmonic n.
    inline double spatial_mode(const RisGeometry &geom, int n, double x)
    {
        return std::sin(n * std::numbers::pi * (x + geom.left_length) / geom.total_length());
    }

    /// Instantaneous line voltage w(x, t).
    inline double bsw_voltage(const RisGeometry &geom, const BswConfig &bsw, double x, double t)
    {
        check_config(geom, bsw);
        if (!(x >= 0.0 && x <= geom.span()))
            throw DomainError("bsw_voltage: position outside the biased span [0, L]");
        const double wb = geom.fundamental_angular_frequency();
        double v = bsw.offset;
        for (int n = 1; n <= geom.harmonics; ++n)
            v += bsw.amplitudes[n - 1] * spatial_mode(geom, n, x) * std::sin(n * wb * t);
        return v;
    }
}

#endif

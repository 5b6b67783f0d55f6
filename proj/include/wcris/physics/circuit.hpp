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

#ifndef WCRIS_PHYSICS_CIRCUIT_HPP
#define WCRIS_PHYSICS_CIRCUIT_HPP

#include "varactor.hpp"

#include <complex>

namespace wcris::physics
{
    using Complex = std::complex<double>;

    /// Lumped model of one unit cell: patch branch (R_d, L_d, C_d) with the
    /// varactor (R_v, L_v, C_v) across its gap, shunted by the grounded
    /// substrate inductance L_s.
    struct UnitCellCircuit
    {
        double r_d = 0.1671;      // ohm
        double c_d = 0.97821e-12; // F
        double l_d = 1.9177e-9;   // H
        double l_s = 1.5959e-9;   // H
        double l_v = 2.34e-9;     // H
        double z0 = kFreeSpaceImpedance;
        VaractorCurve curve = default_varactor_curve();

        void validate() const
        {
            require(r_d > 0 && c_d > 0 && l_d > 0 && l_s > 0 && l_v > 0 && z0 > 0,
                    "unit cell: all circuit values must be positive");
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("cell").value(r_d).value(c_d).value(l_d).value(l_s).value(l_v).value(z0);
            curve.fingerprint(h);
        }
    };

    inline Complex parallel(Complex a, Complex b) { return a * b / (a + b); }

    /// Z_RIS for explicit varactor values; R_d, R_v may be zero here.
    inline Complex ris_impedance(const UnitCellCircuit &cell, double omega, VaractorPoint varactor)
    {
        const Complex j(0.0, 1.0);
        const Complex z_varactor = varactor.resistance + j * omega * cell.l_v + 1.0 / (j * omega * varactor.capacitance);
        const Complex z_gap = parallel(z_varactor, 1.0 / (j * omega * cell.c_d));
        const Complex z_patch = cell.r_d + j * omega * cell.l_d + z_gap;
        return parallel(z_patch, j * omega * cell.l_s);
    }

    inline Complex ris_impedance(const UnitCellCircuit &cell, double omega, double voltage)
    {
        require(omega > 0, "ris_impedance: angular frequency must be positive");
        return ris_impedance(cell, omega, cell.curve.at(voltage));
    }

    inline Complex reflection_from_impedance(Complex z, double z0) { return (z - z0) / (z + z0); }

    inline Complex reflection_coefficient(const UnitCellCircuit &cell, double omega, double voltage)
    {
        return reflection_from_impedance(ris_impedance(cell, omega, voltage), cell.z0);
    }
}

#endif

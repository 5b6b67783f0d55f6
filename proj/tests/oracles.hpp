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

// Independent reference computations used only by the test suites. Nothing
// here calls into the code paths it is used to check.

#ifndef WCRIS_TESTS_ORACLES_HPP
#define WCRIS_TESTS_ORACLES_HPP

#include <wcris/nn/mlp.hpp>
#include <wcris/physics/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace testing_oracles
{
    /// Maximum of the temporal BSW sum at element m by dense sampling of
    /// one fundamental period using direct sin() evaluation.
    inline double brute_force_bias(const wcris::physics::RisGeometry &g, const wcris::physics::BswConfig &bsw,
                                   int m, int samples)
    {
        const double x = m * g.spacing;
        std::vector<double> c(g.harmonics);
        for (int n = 1; n <= g.harmonics; ++n)
            c[n - 1] = bsw.amplitudes[n - 1] * std::sin(n * std::numbers::pi * (x + g.left_length) / g.total_length());
        double best = 0.0;
        for (int k = 0; k < samples; ++k)
        {
            const double phi = 2.0 * std::numbers::pi * k / samples;
            double s = 0.0;
            for (int n = 1; n <= g.harmonics; ++n)
                s += c[n - 1] * std::sin(n * phi);
            best = std::max(best, s);
        }
        return bsw.offset + best;
    }

    /// |sum_{m<M} exp(-j m kappa)|^2 = sin^2(M kappa / 2) / sin^2(kappa / 2), in dB.
    inline double dirichlet_db(double theta_deg, int elements, double spacing, double carrier)
    {
        const double c = 299792458.0;
        const double kappa = 2.0 * std::numbers::pi * spacing * carrier / c * std::sin(theta_deg * std::numbers::pi / 180.0);
        const double half = kappa / 2.0;
        if (std::abs(std::sin(half)) < 1e-300)
            return 10.0 * std::log10(static_cast<double>(elements) * elements);
        const double num = std::sin(elements * half);
        const double den = std::sin(half);
        return 10.0 * std::log10((num * num) / (den * den));
    }

    /// Scalar, loop-by-loop evaluation of a network on one input.
    inline std::vector<double> scalar_forward(const wcris::nn::Mlp &net, const std::vector<double> &x)
    {
        std::vector<double> a = x;
        for (std::size_t l = 0; l < net.layers().size(); ++l)
        {
            const auto &L = net.layers()[l];
            const auto w = net.weights(l);
            const auto b = net.bias(l);
            std::vector<double> out(static_cast<std::size_t>(L.outputs));
            for (int i = 0; i < L.outputs; ++i)
            {
                double z = b[i];
                for (int j = 0; j < L.inputs; ++j)
                    z += w(i, j) * a[static_cast<std::size_t>(j)];
                if (!L.linear)
                {
                    switch (L.activation)
                    {
                    case wcris::nn::Activation::ReLU:
                        z = z > 0 ? z : 0.0;
                        break;
                    case wcris::nn::Activation::PReLU:
                        z = z > 0 ? z : net.slope(l) * z;
                        break;
                    case wcris::nn::Activation::Sigmoid:
                        z = 1.0 / (1.0 + std::exp(-z));
                        break;
                    case wcris::nn::Activation::Tanh:
                        z = std::tanh(z);
                        break;
                    }
                }
                out[static_cast<std::size_t>(i)] = z;
            }
            a = std::move(out);
        }
        return a;
    }
}

#endif

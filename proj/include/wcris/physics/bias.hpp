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

#ifndef WCRIS_PHYSICS_BIAS_HPP
#define WCRIS_PHYSICS_BIAS_HPP

#include "geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace wcris::physics
{
    /// Computes the peak-detected (rectified) bias of every element.
    ///
    /// The time-varying part at a fixed position is a trigonometric
    /// polynomial f(phi) = sum_n c_n sin(n phi) in the phase phi = w_b t. Its
    /// maximum over one period is located on a grid of 64 N samples, then
    /// refined by golden-section search inside the bracketing grid cells
    /// until the bracket is below 1e-9 of the period. The sin(n phi_k) table
    /// and the per-element spatial factors are precomputed once.
    class BiasSynthesizer
    {
    public:
        static constexpr int kSamplesPerHarmonic = 64;
        static constexpr double kRelativeTolerance = 1e-9;

        explicit BiasSynthesizer(const RisGeometry &geom)
            : geom_(geom), grid_(kSamplesPerHarmonic * geom.harmonics)
        {
            geom_.validate();
            const int n_harm = geom_.harmonics;
            // f(2 pi - phi) = -f(phi), so the half grid k = 0..K/2 covers both signs
            half_ = grid_ / 2 + 1;
            table_.resize(n_harm, half_);
            for (int n = 1; n <= n_harm; ++n)
                for (int k = 0; k < half_; ++k)
                {
                    // exact reduction of n*k modulo the grid keeps the table accurate
                    const long long r = (static_cast<long long>(n) * k) % grid_;
                    table_(n - 1, k) = std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / grid_);
                }
            modes_.resize(geom_.elements, n_harm);
            for (int m = 0; m < geom_.elements; ++m)
                for (int n = 1; n <= n_harm; ++n)
                    modes_(m, n - 1) = spatial_mode(geom_, n, geom_.element_position(m));
        }

        const RisGeometry &geometry() const { return geom_; }
        int grid_size() const { return grid_; }

        /// max over phi of sum_n coeffs[n-1] sin(n phi). Always >= 0 (phi = 0 is on the grid).
        double peak(std::span<const double> coeffs) const
        {
            Eigen::RowVectorXd c = Eigen::Map<const Eigen::RowVectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
            if (c.size() != table_.rows())
                throw DomainError("peak: coefficient count differs from harmonic count");
            const Eigen::RowVectorXd acc = c * table_;
            return refine(coeffs, acc);
        }

        double element_bias(const BswConfig &bsw, int m) const
        {
            check_config(geom_, bsw);
            if (m < 0 || m >= geom_.elements)
                throw DomainError("rectified_bias: element index out of range");
            std::vector<double> coeffs(static_cast<std::size_t>(geom_.harmonics));
            element_coefficients(bsw, m, coeffs);
            return bsw.offset + peak(coeffs);
        }

        /// Rectified bias at an arbitrary position in [0, L].
        double bias_at(const BswConfig &bsw, double x) const
        {
            check_config(geom_, bsw);
            if (!(x >= 0.0 && x <= geom_.span()))
                throw DomainError("rectified bias: position outside [0, L]");
            std::vector<double> coeffs(static_cast<std::size_t>(geom_.harmonics));
            for (int n = 1; n <= geom_.harmonics; ++n)
                coeffs[n - 1] = bsw.amplitudes[n - 1] * spatial_mode(geom_, n, x);
            return bsw.offset + peak(coeffs);
        }

        std::vector<double> profile(const BswConfig &bsw) const
        {
            check_config(geom_, bsw);
            const Eigen::Map<const Eigen::RowVectorXd> amps(bsw.amplitudes.data(), geom_.harmonics);
            const Eigen::MatrixXd coeffs = modes_.array().rowwise() * amps.array();
            const Eigen::MatrixXd acc = coeffs * table_;
            std::vector<double> out(static_cast<std::size_t>(geom_.elements));
            std::vector<double> row(static_cast<std::size_t>(geom_.harmonics));
            for (int m = 0; m < geom_.elements; ++m)
            {
                for (int n = 0; n < geom_.harmonics; ++n)
                    row[n] = coeffs(m, n);
                out[m] = bsw.offset + refine(row, acc.row(m));
            }
            return out;
        }

    private:
        void element_coefficients(const BswConfig &bsw, int m, std::span<double> coeffs) const
        {
            const int n_harm = geom_.harmonics;
            for (int n = 0; n < n_harm; ++n)
                coeffs[n] = bsw.amplitudes[n] * modes_(m, n);
        }

        static double evaluate(std::span<const double> coeffs, double phi)
        {
            // sin(n phi) by the Chebyshev recurrence s_{n+1} = 2 cos(phi) s_n - s_{n-1}
            const double c2 = 2.0 * std::cos(phi);
            double prev = 0.0;
            double cur = std::sin(phi);
            double sum = 0.0;
            for (double c : coeffs)
            {
                sum += c * cur;
                const double next = c2 * cur - prev;
                prev = cur;
                cur = next;
            }
            return sum;
        }

        /// Grid maximum from the half-grid sums, then golden-section refinement.
        template <class Row>
        double refine(std::span<const double> coeffs, const Row &acc) const
        {
            if (std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; }))
                return 0.0;

            Eigen::Index k_hi = 0, k_lo = 0;
            const double hi = acc.maxCoeff(&k_hi);
            const double lo = acc.minCoeff(&k_lo);
            int k_best = static_cast<int>(k_hi);
            double result = hi;
            if (-lo > hi)
            {
                k_best = grid_ - static_cast<int>(k_lo);
                result = -lo;
            }

            // golden-section refinement on [phi_{k-1}, phi_{k+1}]
            const double step = 2.0 * std::numbers::pi / grid_;
            double a = (k_best - 1) * step;
            double b = (k_best + 1) * step;
            const double tol = kRelativeTolerance * 2.0 * std::numbers::pi;
            constexpr double inv_phi = 0.6180339887498949;
            double x1 = b - inv_phi * (b - a);
            double x2 = a + inv_phi * (b - a);
            double f1 = evaluate(coeffs, x1);
            double f2 = evaluate(coeffs, x2);
            while (b - a > tol)
            {
                if (f1 < f2)
                {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + inv_phi * (b - a);
                    f2 = evaluate(coeffs, x2);
                }
                else
                {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - inv_phi * (b - a);
                    f1 = evaluate(coeffs, x1);
                }
            }
            result = std::max({result, f1, f2});
            return result;
        }

        RisGeometry geom_;
        int grid_;
        int half_;
        Eigen::MatrixXd table_; // (n, k) = sin((n+1) phi_k), k <= K/2
        Eigen::MatrixXd modes_; // (m, n) = spatial factor of harmonic n+1 at element m
    };

    /// Rectified bias w(m d_x) of element m.
    inline double rectified_bias(const RisGeometry &geom, const BswConfig &bsw, int m)
    {
        return BiasSynthesizer(geom).element_bias(bsw, m);
    }

    inline std::vector<double> bias_profile(const RisGeometry &geom, const BswConfig &bsw)
    {
        return BiasSynthesizer(geom).profile(bsw);
    }

    inline bool check_bias_bounds(std::span<const double> profile, double lo = kDefaultBiasLow,
                                  double hi = kDefaultBiasHigh)
    {
        require(lo < hi, "check_bias_bounds: lower bound must be below upper bound");
        return std::all_of(profile.begin(), profile.end(), [&](double v) { return v >= lo && v <= hi; });
    }

    /// Diagnostic variant: checks a grid `oversample` times finer than the
    /// element pitch over the whole biased span, not only the element taps.
    inline bool check_bias_bounds_fine(const BiasSynthesizer &synth, const BswConfig &bsw,
                                       double lo = kDefaultBiasLow, double hi = kDefaultBiasHigh,
                                       int oversample = 10)
    {
        require(lo < hi, "check_bias_bounds: lower bound must be below upper bound");
        const auto &geom = synth.geometry();
        const int intervals = std::max(1, oversample * (geom.elements - 1));
        for (int j = 0; j <= intervals; ++j)
        {
            const double x = geom.span() * static_cast<double>(j) / intervals;
            const double v = synth.bias_at(bsw, std::min(x, geom.span()));
            if (v < lo || v > hi)
                return false;
        }
        return true;
    }
}

#endif

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

#ifndef WCRIS_PHYSICS_VARACTOR_HPP
#define WCRIS_PHYSICS_VARACTOR_HPP

#include "../common/error.hpp"
#include "../common/hash.hpp"
#include "../common/text.hpp"
#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace wcris::physics
{
    /// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson).
    /// Monotone data yield a monotone interpolant.
    class MonotoneCubic
    {
    public:
        MonotoneCubic() = default;

        MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y))
        {
            const std::size_t n = x_.size();
            require(n >= 2 && y_.size() == n, "MonotoneCubic: need at least two samples");
            std::vector<double> delta(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i)
                delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

            slope_.assign(n, 0.0);
            slope_[0] = delta[0];
            slope_[n - 1] = delta[n - 2];
            for (std::size_t i = 1; i + 1 < n; ++i)
                slope_[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);

            for (std::size_t i = 0; i + 1 < n; ++i)
            {
                if (delta[i] == 0.0)
                {
                    slope_[i] = slope_[i + 1] = 0.0;
                    continue;
                }
                const double a = slope_[i] / delta[i];
                const double b = slope_[i + 1] / delta[i];
                const double r = a * a + b * b;
                if (r > 9.0)
                {
                    const double t = 3.0 / std::sqrt(r);
                    slope_[i] = t * a * delta[i];
                    slope_[i + 1] = t * b * delta[i];
                }
            }
        }

        double operator()(double x) const
        {
            auto it = std::upper_bound(x_.begin(), x_.end(), x);
            std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
            if (i >= x_.size() - 1)
                i = x_.size() - 2;
            const double h = x_[i + 1] - x_[i];
            const double t = (x - x_[i]) / h;
            const double t2 = t * t;
            const double t3 = t2 * t;
            const double h00 = 2 * t3 - 3 * t2 + 1;
            const double h10 = t3 - 2 * t2 + t;
            const double h01 = -2 * t3 + 3 * t2;
            const double h11 = t3 - t2;
            return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
        }

    private:
        std::vector<double> x_, y_, slope_;
    };

    struct VaractorSample
    {
        double voltage;     ///< V
        double capacitance; ///< F
        double resistance;  ///< ohm
    };

    /// Capacitance and series resistance of the varactor versus reverse bias.
    struct VaractorPoint
    {
        double capacitance;
        double resistance;
    };

    /// Tabulated C_v(V), R_v(V) with monotone cubic interpolation between samples.
    class VaractorCurve
    {
    public:
        explicit VaractorCurve(std::vector<VaractorSample> samples) : samples_(std::move(samples))
        {
            require(samples_.size() >= 2, "varactor curve: need at least two samples");
            for (std::size_t i = 0; i < samples_.size(); ++i)
            {
                const auto &s = samples_[i];
                require(s.voltage >= kDefaultBiasLow && s.voltage <= kDefaultBiasHigh,
                        "varactor curve: voltages must lie in [4, 15] V");
                require(s.capacitance > 0 && s.resistance > 0,
                        "varactor curve: capacitance and resistance must be positive");
                if (i > 0)
                {
                    require(s.voltage > samples_[i - 1].voltage, "varactor curve: voltages must be strictly increasing");
                    require(s.capacitance < samples_[i - 1].capacitance,
                            "varactor curve: capacitance must be strictly decreasing in V");
                }
            }
            std::vector<double> v, c, r;
            for (const auto &s : samples_)
            {
                v.push_back(s.voltage);
                c.push_back(s.capacitance);
                r.push_back(s.resistance);
            }
            cap_ = MonotoneCubic(v, c);
            res_ = MonotoneCubic(v, r);
        }

        double min_voltage() const { return samples_.front().voltage; }
        double max_voltage() const { return samples_.back().voltage; }
        const std::vector<VaractorSample> &samples() const { return samples_; }

        VaractorPoint at(double voltage) const
        {
            if (!(voltage >= min_voltage() && voltage <= max_voltage()))
                throw DomainError("varactor curve: bias " + format_double(voltage) + " V outside [" +
                                  format_double(min_voltage()) + ", " + format_double(max_voltage()) + "] V");
            return {cap_(voltage), res_(voltage)};
        }

        void fingerprint(Fnv1a &h) const
        {
            h.text("varactor");
            for (const auto &s : samples_)
                h.value(s.voltage).value(s.capacitance).value(s.resistance);
        }

    private:
        std::vector<VaractorSample> samples_;
        MonotoneCubic cap_, res_;
    };

    /// Junction-capacitance law C(V) = C_j0 / (1 + V/phi)^gamma with a series
    /// resistance R(V) = R_inf + R_1 / (1 + V/phi).
    struct JunctionLaw
    {
        double cj0;
        double phi;
        double gamma;
        double r_inf;
        double r_1;

        double capacitance(double v) const { return cj0 / std::pow(1.0 + v / phi, gamma); }
        double resistance(double v) const { return r_inf + r_1 / (1.0 + v / phi); }

        /// Fit C_j0 and gamma through two (V, C) anchors for a given phi.
        static JunctionLaw through(double v_lo, double c_lo, double v_hi, double c_hi, double phi, double r_inf,
                                   double r_1)
        {
            const double gamma = std::log(c_lo / c_hi) / std::log((1.0 + v_hi / phi) / (1.0 + v_lo / phi));
            const double cj0 = c_lo * std::pow(1.0 + v_lo / phi, gamma);
            return {cj0, phi, gamma, r_inf, r_1};
        }

        VaractorCurve tabulate(double v_lo, double v_hi, int count) const
        {
            std::vector<VaractorSample> s;
            for (int i = 0; i < count; ++i)
            {
                const double v = (i == count - 1) ? v_hi : v_lo + (v_hi - v_lo) * i / (count - 1);
                s.push_back({v, capacitance(v), resistance(v)});
            }
            return VaractorCurve(std::move(s));
        }
    };

    /// Default SMV1231-040LF approximation: C(4 V) = 0.34 pF, C(15 V) = 0.15 pF,
    /// phi = 1.2 V, which sweeps the unit cell through its parallel resonance at
    /// 2.45 GHz inside the bias range. Resistance falls from 0.53 to 0.37 ohm.
    inline JunctionLaw default_junction_law()
    {
        return JunctionLaw::through(4.0, 0.34e-12, 15.0, 0.15e-12, 1.2, 0.3, 1.0);
    }

    inline VaractorCurve default_varactor_curve()
    {
        return default_junction_law().tabulate(4.0, 15.0, 23);
    }

    /// Three whitespace-separated columns per line: V, C_v [pF], R_v [ohm].
    /// Blank lines and lines starting with '#' are ignored.
    inline VaractorCurve parse_varactor_table(std::istream &in)
    {
        std::vector<VaractorSample> samples;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto t = trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            std::istringstream ls{std::string(t)};
            std::string a, b, c, extra;
            if (!(ls >> a >> b >> c) || (ls >> extra))
                throw FormatError("varactor table line " + std::to_string(lineno) + ": expected 3 columns");
            samples.push_back({parse_double(a), parse_double(b) * 1e-12, parse_double(c)});
        }
        return VaractorCurve(std::move(samples));
    }

    inline std::string format_varactor_table(const VaractorCurve &curve)
    {
        std::string out = "# V  C_v[pF]  R_v[ohm]\n";
        for (const auto &s : curve.samples())
            out += format_double(s.voltage) + " " + format_double(s.capacitance * 1e12) + " " +
                   format_double(s.resistance) + "\n";
        return out;
    }
}

#endif

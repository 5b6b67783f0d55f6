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

#ifndef WCRIS_DATASET_DATASET_HPP
#define WCRIS_DATASET_DATASET_HPP

#include "../common/error.hpp"
#include "../common/hash.hpp"
#include "../common/rng.hpp"
#include "../physics/channel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace wcris::dataset
{
    /// One (W, P) training pair: amplitudes in volts, sampled pattern in dB.
    struct DatasetSample
    {
        std::vector<double> amplitudes;
        std::vector<double> powers_db;

        friend bool operator==(const DatasetSample &, const DatasetSample &) = default;
    };

    /// Global affine maps W -> W / w_hi and P -> 2 (P - p_min)/(p_max - p_min) - 1.
    struct ScalingSpec
    {
        double amplitude_max = 0.0; ///< w_hi
        double power_min = 0.0;     ///< p_min, dB
        double power_max = 0.0;     ///< p_max, dB

        bool valid() const { return amplitude_max > 0.0 && power_min < power_max; }

        void validate() const
        {
            if (!(amplitude_max > 0.0))
                throw DegenerateData("scaling: maximum amplitude must be positive");
            if (!(power_min < power_max))
                throw DegenerateData("scaling: power extremes coincide (p_max = p_min)");
        }

        double scale_amplitude(double w) const { return w / amplitude_max; }
        double unscale_amplitude(double s) const { return s * amplitude_max; }
        double scale_power(double p) const { return 2.0 * (p - power_min) / (power_max - power_min) - 1.0; }
        double unscale_power(double s) const { return (s + 1.0) * 0.5 * (power_max - power_min) + power_min; }

        std::uint64_t fingerprint() const
        {
            return Fnv1a().text("scaling").value(amplitude_max).value(power_min).value(power_max).digest();
        }

        friend bool operator==(const ScalingSpec &, const ScalingSpec &) = default;
    };

    struct DatasetMeta
    {
        std::uint64_t physics_fingerprint = 0;
        std::uint64_t seed = 0;
        double sigma1 = 0.008;
        double sigma2 = 0.8;
        std::uint64_t rejected = 0; ///< candidates redrawn for leaving the bias range
        int harmonics = 25;
        physics::AngleGrid grid;

        friend bool operator==(const DatasetMeta &, const DatasetMeta &) = default;
    };

    struct Dataset
    {
        std::vector<DatasetSample> samples;
        ScalingSpec scaling;
        DatasetMeta meta;

        std::size_t size() const { return samples.size(); }
        int input_width() const { return meta.harmonics; }
        int output_width() const { return meta.grid.count; }

        friend bool operator==(const Dataset &, const Dataset &) = default;
    };

    /// Dataset-global extremes: w_hi = max entry (min is 0 for non-negative W),
    /// p_min / p_max over every stored power sample.
    inline ScalingSpec compute_scaling(const std::vector<DatasetSample> &samples)
    {
        ScalingSpec s;
        s.power_min = std::numeric_limits<double>::infinity();
        s.power_max = -std::numeric_limits<double>::infinity();
        for (const auto &smp : samples)
        {
            for (double w : smp.amplitudes)
                s.amplitude_max = std::max(s.amplitude_max, w);
            for (double p : smp.powers_db)
            {
                s.power_min = std::min(s.power_min, p);
                s.power_max = std::max(s.power_max, p);
            }
        }
        if (samples.empty())
            s.power_min = s.power_max = 0.0;
        return s;
    }

    /// Column-per-sample matrices ready for training.
    struct NormalizedData
    {
        Eigen::MatrixXd inputs;  ///< N x S, entries in [0, 1]
        Eigen::MatrixXd targets; ///< n_angles x S, entries in [-1, 1]
        ScalingSpec scaling;

        Eigen::Index count() const { return inputs.cols(); }
    };

    inline NormalizedData normalize(const Dataset &ds)
    {
        ds.scaling.validate();
        NormalizedData out;
        out.scaling = ds.scaling;
        const auto n_in = static_cast<Eigen::Index>(ds.input_width());
        const auto n_out = static_cast<Eigen::Index>(ds.output_width());
        const auto count = static_cast<Eigen::Index>(ds.size());
        out.inputs.resize(n_in, count);
        out.targets.resize(n_out, count);
        for (Eigen::Index j = 0; j < count; ++j)
        {
            const auto &smp = ds.samples[static_cast<std::size_t>(j)];
            if (static_cast<Eigen::Index>(smp.amplitudes.size()) != n_in ||
                static_cast<Eigen::Index>(smp.powers_db.size()) != n_out)
                throw FormatError("dataset: sample " + std::to_string(j) + " has inconsistent widths");
            for (Eigen::Index i = 0; i < n_in; ++i)
                out.inputs(i, j) = ds.scaling.scale_amplitude(smp.amplitudes[static_cast<std::size_t>(i)]);
            for (Eigen::Index i = 0; i < n_out; ++i)
                out.targets(i, j) = ds.scaling.scale_power(smp.powers_db[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    /// Inverse of normalize() on the sample values.
    inline std::vector<DatasetSample> denormalize(const NormalizedData &data)
    {
        std::vector<DatasetSample> out(static_cast<std::size_t>(data.count()));
        for (Eigen::Index j = 0; j < data.count(); ++j)
        {
            auto &smp = out[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < data.inputs.rows(); ++i)
                smp.amplitudes.push_back(data.scaling.unscale_amplitude(data.inputs(i, j)));
            for (Eigen::Index i = 0; i < data.targets.rows(); ++i)
                smp.powers_db.push_back(data.scaling.unscale_power(data.targets(i, j)));
        }
        return out;
    }
}

#endif

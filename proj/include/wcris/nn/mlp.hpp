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


#ifndef WCRIS_NN_MLP_HPP
#define WCRIS_NN_MLP_HPP

#include "../common/rng.hpp"
#include "architecture.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

// Dense feed-forward network. All trainable values live in one flat vector;
// each layer records where its weights (column-major, out x in), bias and
// optional PReLU slope start. Optimizers and finite-difference checks work
// on that vector directly.

namespace wcris::nn
{
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;

    struct LayerLayout
    {
        int inputs = 0;
        int outputs = 0;
        bool linear = false; ///< output layer
        Activation activation = Activation::ReLU;
        Eigen::Index weight_offset = 0;
        Eigen::Index bias_offset = 0;
        Eigen::Index slope_offset = -1; ///< PReLU only
    };

    inline constexpr double kPreluInitialSlope = 0.25;

    class Mlp
    {
    public:
        Mlp() = default;

        Mlp(Architecture arch, int inputs, int outputs) : arch_(std::move(arch)), inputs_(inputs), outputs_(outputs)
        {
            arch_.validate_shape();
            if (inputs < 1 || outputs < 1)
                throw ConfigError("network input and output widths must be positive");
            Eigen::Index offset = 0;
            int prev = inputs;
            auto add = [&](int out, bool linear, Activation act) {
                LayerLayout l;
                l.inputs = prev;
                l.outputs = out;
                l.linear = linear;
                l.activation = act;
                l.weight_offset = offset;
                offset += static_cast<Eigen::Index>(out) * prev;
                l.bias_offset = offset;
                offset += out;
                if (!linear && act == Activation::PReLU)
                    l.slope_offset = offset++;
                layers_.push_back(l);
                prev = out;
            };
            for (const auto &spec : arch_.layers)
                add(spec.nodes, false, spec.activation);
            add(outputs, true, Activation::ReLU);
            params_ = Vector::Zero(offset);
            for (const auto &l : layers_)
                if (l.slope_offset >= 0)
                    params_[l.slope_offset] = kPreluInitialSlope;
        }

        const Architecture &architecture() const { return arch_; }
        int input_width() const { return inputs_; }
        int output_width() const { return outputs_; }
        const std::vector<LayerLayout> &layers() const { return layers_; }
        Eigen::Index parameter_count() const { return params_.size(); }

        Vector &parameters() { return params_; }
        const Vector &parameters() const { return params_; }

        Eigen::Map<Matrix> weights(std::size_t l)
        {
            const auto &L = layers_[l];
            return {params_.data() + L.weight_offset, L.outputs, L.inputs};
        }
        Eigen::Map<const Matrix> weights(std::size_t l) const
        {
            const auto &L = layers_[l];
            return {params_.data() + L.weight_offset, L.outputs, L.inputs};
        }
        Eigen::Map<Vector> bias(std::size_t l) { return {params_.data() + layers_[l].bias_offset, layers_[l].outputs}; }
        Eigen::Map<const Vector> bias(std::size_t l) const
        {
            return {params_.data() + layers_[l].bias_offset, layers_[l].outputs};
        }
        double slope(std::size_t l) const
        {
            return layers_[l].slope_offset >= 0 ? params_[layers_[l].slope_offset] : 0.0;
        }

        /// True for entries that are connection weights (the ones L2 applies to).
        std::vector<bool> weight_mask() const
        {
            std::vector<bool> mask(static_cast<std::size_t>(params_.size()), false);
            for (const auto &l : layers_)
                std::fill_n(mask.begin() + l.weight_offset, static_cast<Eigen::Index>(l.outputs) * l.inputs, true);
            return mask;
        }

        double weight_square_sum() const
        {
            double s = 0.0;
            for (std::size_t l = 0; l < layers_.size(); ++l)
                s += weights(l).squaredNorm();
            return s;
        }

    private:
        Architecture arch_;
        int inputs_ = 0;
        int outputs_ = 0;
        std::vector<LayerLayout> layers_;
        Vector params_;
    };

    namespace detail
    {
        inline double sigmoid(double z)
        {
            if (z >= 0)
                return 1.0 / (1.0 + std::exp(-z));
            const double e = std::exp(z);
            return e / (1.0 + e);
        }

        inline void activate(Matrix &z, const LayerLayout &l, double slope)
        {
            if (l.linear)
                return;
            switch (l.activation)
            {
            case Activation::ReLU:
                z = z.cwiseMax(0.0);
                break;
            case Activation::PReLU:
                z = z.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
                break;
            case Activation::Sigmoid:
                z = z.unaryExpr([](double v) { return sigmoid(v); });
                break;
            case Activation::Tanh:
                z = z.array().tanh().matrix();
                break;
            }
        }
    }

    /// Seeded initialization. Hidden ReLU/PReLU layers draw weights from
    /// U(-a, a) with a = sqrt(6 / fan_in); Sigmoid/Tanh layers and the
    /// linear output use a = sqrt(6 / (fan_in + fan_out)). Biases start at 0.
    inline double init_limit(const LayerLayout &l)
    {
        if (!l.linear && (l.activation == Activation::ReLU || l.activation == Activation::PReLU))
            return std::sqrt(6.0 / l.inputs);
        return std::sqrt(6.0 / (l.inputs + l.outputs));
    }

    inline Mlp init_mlp(const Architecture &arch, int inputs, int outputs, std::uint64_t seed)
    {
        Mlp net(arch, inputs, outputs);
        Rng rng = make_stream(seed, 0x6e6e);
        for (std::size_t l = 0; l < net.layers().size(); ++l)
        {
            std::uniform_real_distribution<double> dist(-init_limit(net.layers()[l]), init_limit(net.layers()[l]));
            auto w = net.weights(l);
            for (Eigen::Index j = 0; j < w.cols(); ++j)
                for (Eigen::Index i = 0; i < w.rows(); ++i)
                    w(i, j) = dist(rng);
        }
        return net;
    }

    /// Batched inference: one sample per column.
    inline Matrix forward(const Mlp &net, const Matrix &inputs)
    {
        if (inputs.rows() != net.input_width())
            throw DomainError("forward: input has " + std::to_string(inputs.rows()) + " rows, network expects " +
                              std::to_string(net.input_width()));
        if (!inputs.allFinite())
            throw DomainError("forward: non-finite input");
        Matrix a = inputs;
        for (std::size_t l = 0; l < net.layers().size(); ++l)
        {
            Matrix z = net.weights(l) * a;
            z.colwise() += net.bias(l);
            detail::activate(z, net.layers()[l], net.slope(l));
            a = std::move(z);
        }
        return a;
    }

    inline Vector forward(const Mlp &net, const Vector &input)
    {
        return forward(net, Matrix(input)).col(0);
    }

    /// Mean of squared residuals over every output of every sample.
    inline double data_mse(const Mlp &net, const Matrix &inputs, const Matrix &targets)
    {
        if (inputs.cols() == 0)
            throw DomainError("loss: empty batch");
        return (forward(net, inputs) - targets).squaredNorm() / static_cast<double>(targets.size());
    }

    /// Training objective: MSE + l2 * sum of squared connection weights.
    inline double loss(const Mlp &net, const Matrix &inputs, const Matrix &targets, double l2)
    {
        return data_mse(net, inputs, targets) + l2 * net.weight_square_sum();
    }

    /// Reverse-mode gradient of loss() with respect to net.parameters().
    /// Writes into grad (resized as needed) and returns the loss value.
    inline double gradient(const Mlp &net, const Matrix &inputs, const Matrix &targets, double l2, Vector &grad)
    {
        if (inputs.cols() == 0)
            throw DomainError("gradient: empty batch");
        if (!inputs.allFinite())
            throw DomainError("gradient: non-finite input");
        const auto &layers = net.layers();
        const std::size_t n_layers = layers.size();

        // forward pass keeping pre-activations and layer inputs
        std::vector<Matrix> acts(n_layers + 1);
        std::vector<Matrix> pre(n_layers);
        acts[0] = inputs;
        for (std::size_t l = 0; l < n_layers; ++l)
        {
            pre[l] = net.weights(l) * acts[l];
            pre[l].colwise() += net.bias(l);
            acts[l + 1] = pre[l];
            detail::activate(acts[l + 1], layers[l], net.slope(l));
        }

        const Matrix residual = acts[n_layers] - targets;
        const double scale = 1.0 / static_cast<double>(targets.size());
        const double value = residual.squaredNorm() * scale + l2 * net.weight_square_sum();

        grad.setZero(net.parameter_count());
        Matrix delta = 2.0 * scale * residual; // dL/d(layer output)
        for (std::size_t k = n_layers; k-- > 0;)
        {
            const auto &L = layers[k];
            const Matrix &z = pre[k];
            if (!L.linear)
            {
                switch (L.activation)
                {
                case Activation::ReLU:
                    delta = delta.cwiseProduct(z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
                    break;
                case Activation::PReLU:
                {
                    const double a = net.slope(k);
                    grad[L.slope_offset] = delta.cwiseProduct(z.unaryExpr([](double v) { return v > 0.0 ? 0.0 : v; })).sum();
                    delta = delta.cwiseProduct(z.unaryExpr([a](double v) { return v > 0.0 ? 1.0 : a; }));
                    break;
                }
                case Activation::Sigmoid:
                    delta = delta.cwiseProduct(acts[k + 1].unaryExpr([](double s) { return s * (1.0 - s); }));
                    break;
                case Activation::Tanh:
                    delta = delta.cwiseProduct(acts[k + 1].unaryExpr([](double t) { return 1.0 - t * t; }));
                    break;
                }
            }
            Eigen::Map<Matrix> gw(grad.data() + L.weight_offset, L.outputs, L.inputs);
            gw.noalias() = delta * acts[k].transpose();
            gw += 2.0 * l2 * net.weights(k);
            Eigen::Map<Vector>(grad.data() + L.bias_offset, L.outputs) = delta.rowwise().sum();
            if (k > 0)
                delta = (net.weights(k).transpose() * delta).eval();
        }
        return value;
    }

    /// Adaptive-moment optimizer state.
    struct AdamState
    {
        double beta1 = 0.9;
        double beta2 = 0.999;
        double epsilon = 1e-8;
        std::uint64_t step = 0;
        Vector m;
        Vector v;

        friend bool operator==(const AdamState &a, const AdamState &b)
        {
            return a.beta1 == b.beta1 && a.beta2 == b.beta2 && a.epsilon == b.epsilon && a.step == b.step &&
                   a.m.size() == b.m.size() && a.v.size() == b.v.size() && a.m == b.m && a.v == b.v;
        }
    };

    inline AdamState make_adam(Eigen::Index parameters)
    {
        AdamState s;
        s.m = Vector::Zero(parameters);
        s.v = Vector::Zero(parameters);
        return s;
    }

    /// One bias-corrected Adam update of params in place.
    inline void adam_step(Vector &params, AdamState &state, const Vector &grad, double lr)
    {
        if (state.m.size() != params.size() || state.v.size() != params.size() || grad.size() != params.size())
            throw DomainError("adam_step: state, gradient and parameter sizes differ");
        ++state.step;
        state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
        state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.cwiseAbs2();
        const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
        const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
        params.array() -= lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + state.epsilon);
    }
}

#endif

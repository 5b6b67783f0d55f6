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


#ifndef WCRIS_NN_TRAIN_HPP
#define WCRIS_NN_TRAIN_HPP

#include "../common/text.hpp"
#include "mlp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace wcris::nn
{
    struct TrainConfig
    {
        double l2 = 5e-7;
        double learning_rate = 1e-3;
        int plateau_patience = 20; ///< epochs without improvement before halving the rate
        int stop_patience = 30;    ///< epochs without improvement before stopping
        double min_improvement = 1e-6;
        double validation_fraction = 0.1;
        std::uint64_t seed = 1;
        std::optional<int> epoch_cap; ///< overrides larger architecture epoch counts

        void validate() const
        {
            if (!(l2 >= 0.0))
                throw ConfigError("training: l2 must be non-negative");
            if (!(learning_rate > 0.0))
                throw ConfigError("training: learning rate must be positive");
            if (!(plateau_patience > 0 && plateau_patience < stop_patience))
                throw ConfigError("training: need 0 < plateau_patience < stop_patience");
            if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
                throw ConfigError("training: validation fraction must lie in (0, 1)");
            if (epoch_cap && *epoch_cap < 1)
                throw ConfigError("training: epoch cap must be positive");
        }
    };

    struct EpochRecord
    {
        int epoch = 0;
        double train_mse = 0.0; ///< sample-weighted mean of mini-batch data MSE during the epoch
        double val_mse = 0.0;
        double learning_rate = 0.0;
    };

    struct RateEvent
    {
        int epoch = 0;
        double learning_rate = 0.0; ///< rate in effect from the next epoch on
    };

    struct TrainReport
    {
        std::vector<EpochRecord> epochs;
        std::vector<RateEvent> rate_events;
        int best_epoch = 0;
        double best_val_mse = 0.0;
        double best_train_mse = 0.0;
        bool stopped_early = false;

        int epochs_run() const { return static_cast<int>(epochs.size()); }
    };

    struct TrainResult
    {
        Mlp model; ///< parameters from the best-validation epoch
        TrainReport report;
        AdamState optimizer; ///< state at the end of the last epoch run
    };

    /// Columns [0, n_train) train, the rest validate, in stored order.
    inline Eigen::Index train_count(Eigen::Index samples, double validation_fraction)
    {
        const auto n_val = static_cast<Eigen::Index>(std::llround(validation_fraction * static_cast<double>(samples)));
        return samples - std::clamp<Eigen::Index>(n_val, 1, samples - 1);
    }

    inline TrainResult train(Mlp net, const Matrix &inputs, const Matrix &targets, const TrainConfig &cfg,
                             const std::function<void(const EpochRecord &)> &on_epoch = {})
    {
        cfg.validate();
        if (inputs.cols() != targets.cols() || inputs.rows() != net.input_width() ||
            targets.rows() != net.output_width())
            throw DomainError("train: data shape does not match the network");
        if (inputs.cols() < 2)
            throw DomainError("train: need at least two samples for a train/validation split");

        const Eigen::Index n_train = train_count(inputs.cols(), cfg.validation_fraction);
        const Eigen::Index n_val = inputs.cols() - n_train;
        const Matrix val_x = inputs.rightCols(n_val);
        const Matrix val_y = targets.rightCols(n_val);

        const auto &arch = net.architecture();
        const int max_epochs = cfg.epoch_cap ? std::min(*cfg.epoch_cap, arch.epochs) : arch.epochs;
        const Eigen::Index batch = std::min<Eigen::Index>(arch.batch_size, n_train);

        TrainResult result{net, {}, make_adam(net.parameter_count())};
        auto &report = result.report;
        Rng rng = make_stream(cfg.seed, 0x7472);
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n_train));
        std::iota(order.begin(), order.end(), Eigen::Index{0});

        double lr = cfg.learning_rate;
        double best = std::numeric_limits<double>::infinity();
        int since_best = 0;
        int since_rate_change = 0;
        Vector grad;
        Matrix bx(net.input_width(), batch), by(net.output_width(), batch);

        for (int epoch = 1; epoch <= max_epochs; ++epoch)
        {
            std::shuffle(order.begin(), order.end(), rng);
            double weighted = 0.0;
            for (Eigen::Index start = 0; start < n_train; start += batch)
            {
                const Eigen::Index len = std::min(batch, n_train - start);
                bx.resize(Eigen::NoChange, len);
                by.resize(Eigen::NoChange, len);
                for (Eigen::Index j = 0; j < len; ++j)
                {
                    bx.col(j) = inputs.col(order[static_cast<std::size_t>(start + j)]);
                    by.col(j) = targets.col(order[static_cast<std::size_t>(start + j)]);
                }
                const double batch_loss = gradient(net, bx, by, cfg.l2, grad);
                if (!std::isfinite(batch_loss) || !grad.allFinite())
                    throw TrainingError("training diverged at epoch " + std::to_string(epoch) +
                                        " (non-finite loss); best validation MSE so far " +
                                        format_double(report.best_val_mse));
                weighted += (batch_loss - cfg.l2 * net.weight_square_sum()) * static_cast<double>(len);
                adam_step(net.parameters(), result.optimizer, grad, lr);
            }

            EpochRecord rec{epoch, weighted / static_cast<double>(n_train), data_mse(net, val_x, val_y), lr};
            if (!std::isfinite(rec.val_mse))
                throw TrainingError("training diverged at epoch " + std::to_string(epoch) +
                                    " (non-finite validation loss)");
            report.epochs.push_back(rec);
            if (on_epoch)
                on_epoch(rec);

            if (rec.val_mse < best - cfg.min_improvement)
            {
                best = rec.val_mse;
                report.best_epoch = epoch;
                report.best_val_mse = rec.val_mse;
                report.best_train_mse = rec.train_mse;
                result.model = net;
                since_best = 0;
                since_rate_change = 0;
            }
            else
            {
                ++since_best;
                ++since_rate_change;
                if (since_best >= cfg.stop_patience)
                {
                    report.stopped_early = epoch < max_epochs;
                    break;
                }
                if (since_rate_change >= cfg.plateau_patience)
                {
                    lr *= 0.5;
                    since_rate_change = 0;
                    report.rate_events.push_back({epoch, lr});
                }
            }
        }
        return result;
    }
}

#endif

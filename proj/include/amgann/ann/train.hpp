#ifndef AMGANN_ANN_TRAIN_HPP
#define AMGANN_ANN_TRAIN_HPP

/// @file train.hpp
/// @brief Mini-batch Adam training with early stopping on validation loss.

#include <algorithm>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "amgann/ann/adam.hpp"
#include "amgann/ann/loss.hpp"
#include "amgann/ann/network.hpp"
#include "amgann/core.hpp"
#include "amgann/rng.hpp"

namespace amgann {

/// One supervised example: normalized view values plus the two scalar features
/// and the measured convergence factor.
struct TrainSample {
    std::vector<real_t> input; ///< m*m values, row-major
    real_t log_h = 0.0;        ///< -log2(h)
    real_t theta = 0.0;
    real_t target = 0.0;       ///< observed convergence factor
};

struct TrainOptions {
    index_t batch_size = 32;
    index_t max_epochs = 1000;
    index_t patience = 50; ///< epochs without a new best validation loss
    AdamOptions adam;
    /// Called after every epoch with (epoch, train loss, val loss, new best).
    std::function<void(index_t, real_t, real_t, bool)> on_epoch;
};

/// Per-epoch losses; entries align (train alongside validation).
struct TrainHistory {
    std::vector<real_t> train_loss; ///< mean of batch MSEs, dropout active
    std::vector<real_t> val_loss;   ///< inference-mode MSE after the epoch
    index_t best_epoch = 0;         ///< index of the restored weights
};

namespace detail {

inline real_t evaluate_mse(const SurrogateModel& model, const ParamLayout& layout,
                           const std::vector<TrainSample>& samples) {
    real_t sum = 0.0;
    for (const TrainSample& s : samples) {
        ForwardCache cache;
        const real_t pred =
            run_forward(model, layout, s.input.data(), s.log_h, s.theta, false, nullptr, cache);
        const real_t d = pred - s.target;
        sum += d * d;
    }
    return sum / static_cast<real_t>(samples.size());
}

} // namespace detail

/// Trains a fresh model from the given seed.  The same generator drives weight
/// initialization, per-epoch shuffling, and dropout masks, so a fixed seed
/// reproduces the run bit for bit.
inline std::pair<SurrogateModel, TrainHistory> train(
    const std::vector<TrainSample>& train_set, const std::vector<TrainSample>& val_set,
    const NetworkConfig& config, index_t m, std::uint64_t seed,
    NormalizationMode mode = NormalizationMode::SumStandard, const TrainOptions& options = {}) {
    validate(config);
    if (train_set.empty() || val_set.empty())
        throw DegenerateInputError("train: training and validation sets must be non-empty");
    if (options.batch_size < 1 || options.max_epochs < 1 || options.patience < 1)
        throw InvalidParameterError("train: batch size, epoch cap, and patience must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    for (const std::vector<TrainSample>* set : {&train_set, &val_set})
        for (const TrainSample& s : *set)
            if (s.input.size() != expected)
                throw DimensionError("train: sample view size does not match m");

    SurrogateModel model;
    model.config = config;
    model.m = m;
    model.mode = mode;
    model.init_seed = seed;
    Rng rng(seed);
    he_init(model, rng);

    const ParamLayout layout = model.layout();
    AdamState adam(layout.total);
    TrainHistory history;
    std::vector<real_t> best_params = model.params;
    real_t best_val = std::numeric_limits<real_t>::infinity();
    index_t since_best = 0;

    std::vector<std::size_t> order(train_set.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<real_t> grads(layout.total);

    for (index_t epoch = 0; epoch < options.max_epochs; ++epoch) {
        rng.shuffle(order);
        real_t epoch_loss = 0.0;
        index_t n_batches = 0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(options.batch_size)) {
            const std::size_t stop =
                std::min(order.size(), start + static_cast<std::size_t>(options.batch_size));
            const real_t batch = static_cast<real_t>(stop - start);
            std::fill(grads.begin(), grads.end(), 0.0);
            real_t batch_sq = 0.0;
            for (std::size_t k = start; k < stop; ++k) {
                const TrainSample& s = train_set[order[k]];
                detail::ForwardCache cache;
                const real_t pred = detail::run_forward(model, layout, s.input.data(), s.log_h,
                                                        s.theta, true, &rng, cache);
                const real_t d = pred - s.target;
                batch_sq += d * d;
                detail::run_backward(model, layout, cache, 2.0 * d / batch, grads);
            }
            adam_step(model.params, grads, adam, options.adam);
            epoch_loss += batch_sq / batch;
            ++n_batches;
        }
        history.train_loss.push_back(epoch_loss / static_cast<real_t>(n_batches));

        const real_t val = detail::evaluate_mse(model, layout, val_set);
        history.val_loss.push_back(val);
        const bool is_best = val < best_val;
        if (is_best) {
            best_val = val;
            best_params = model.params;
            history.best_epoch = epoch;
            since_best = 0;
        }
        if (options.on_epoch) options.on_epoch(epoch, history.train_loss.back(), val, is_best);
        if (!is_best && ++since_best >= options.patience) break;
    }

    model.params = std::move(best_params);
    return {std::move(model), std::move(history)};
}

} // namespace amgann

#endif // AMGANN_ANN_TRAIN_HPP

#ifndef AMGANN_ANN_LOSS_HPP
#define AMGANN_ANN_LOSS_HPP

/// @file loss.hpp
/// @brief Scalar regression metrics.

#include <cmath>
#include <vector>

#include "amgann/core.hpp"

namespace amgann {

/// Mean squared error over paired predictions/targets.
inline real_t loss_mse(const std::vector<real_t>& predictions,
                       const std::vector<real_t>& targets) {
    if (predictions.size() != targets.size())
        throw DimensionError("loss_mse: prediction/target lengths differ");
    if (predictions.empty()) throw DegenerateInputError("loss_mse: empty input");
    real_t sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const real_t d = predictions[i] - targets[i];
        sum += d * d;
    }
    return sum / static_cast<real_t>(predictions.size());
}

/// Mean absolute error over paired predictions/targets.
inline real_t metric_mae(const std::vector<real_t>& predictions,
                         const std::vector<real_t>& targets) {
    if (predictions.size() != targets.size())
        throw DimensionError("metric_mae: prediction/target lengths differ");
    if (predictions.empty()) throw DegenerateInputError("metric_mae: empty input");
    real_t sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        sum += std::abs(predictions[i] - targets[i]);
    return sum / static_cast<real_t>(predictions.size());
}

} // namespace amgann

#endif // AMGANN_ANN_LOSS_HPP

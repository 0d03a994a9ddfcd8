#ifndef AMGANN_ANN_ADAM_HPP
#define AMGANN_ANN_ADAM_HPP

/// @file adam.hpp
/// @brief Adam optimizer with bias-corrected moment estimates.

#include <cmath>
#include <vector>

#include "amgann/core.hpp"

namespace amgann {

/// First/second moment accumulators plus the step counter.
struct AdamState {
    index_t t = 0;
    std::vector<real_t> m;
    std::vector<real_t> v;

    explicit AdamState(std::size_t n_params)
        : m(n_params, 0.0), v(n_params, 0.0) {}
};

/// Hyper-parameters; the defaults are the standard choices.
struct AdamOptions {
    real_t learning_rate = 1e-3;
    real_t beta1 = 0.9;
    real_t beta2 = 0.999;
    real_t epsilon = 1e-8;
};

/// One in-place parameter update from a gradient of the same length.
inline void adam_step(std::vector<real_t>& params, const std::vector<real_t>& grads,
                      AdamState& state, const AdamOptions& opt = {}) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw DimensionError("adam_step: parameter, gradient, and state sizes differ");
    state.t += 1;
    const real_t bc1 = 1.0 - std::pow(opt.beta1, static_cast<real_t>(state.t));
    const real_t bc2 = 1.0 - std::pow(opt.beta2, static_cast<real_t>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = opt.beta1 * state.m[i] + (1.0 - opt.beta1) * grads[i];
        state.v[i] = opt.beta2 * state.v[i] + (1.0 - opt.beta2) * grads[i] * grads[i];
        const real_t m_hat = state.m[i] / bc1;
        const real_t v_hat = state.v[i] / bc2;
        params[i] -= opt.learning_rate * m_hat / (std::sqrt(v_hat) + opt.epsilon);
    }
}

} // namespace amgann

#endif // AMGANN_ANN_ADAM_HPP

#include "dpg/numerics/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpg::numerics {

AdamState AdamState::for_params(const MlpParameters& params, double beta1, double beta2,
                                double epsilon) {
    AdamState state;
    state.first_moment.assign(params.parameter_count(), 0.0);
    state.second_moment.assign(params.parameter_count(), 0.0);
    state.beta1 = beta1;
    state.beta2 = beta2;
    state.epsilon = epsilon;
    return state;
}

void adam_step(MlpParameters& params, const GradientBundle& grads, AdamState& state,
               double learning_rate) {
    const std::size_t n = params.parameter_count();
    if (!grads.matches(params) || state.first_moment.size() != n ||
        state.second_moment.size() != n) {
        throw std::invalid_argument("adam_step: parameter, gradient and state shapes differ");
    }
    for (std::size_t k = 0; k < grads.layers.size(); ++k) {
        const auto& g = grads.layers[k];
        for (std::size_t i = 0; i < g.weights.size(); ++i) {
            if (!std::isfinite(g.weights[i])) {
                throw std::domain_error("adam_step: non-finite weight gradient at layer " +
                                        std::to_string(k) + " index " + std::to_string(i));
            }
        }
        for (std::size_t i = 0; i < g.bias.size(); ++i) {
            if (!std::isfinite(g.bias[i])) {
                throw std::domain_error("adam_step: non-finite bias gradient at layer " +
                                        std::to_string(k) + " index " + std::to_string(i));
            }
        }
    }

    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(state.beta1, t);
    const double correction2 = 1.0 - std::pow(state.beta2, t);

    std::size_t idx = 0;
    auto update = [&](double& param, double grad) {
        double& m = state.first_moment[idx];
        double& v = state.second_moment[idx];
        m = state.beta1 * m + (1.0 - state.beta1) * grad;
        v = state.beta2 * v + (1.0 - state.beta2) * grad * grad;
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        param -= learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
        ++idx;
    };
    for (std::size_t k = 0; k < params.layers.size(); ++k) {
        auto& p = params.layers[k];
        const auto& g = grads.layers[k];
        for (std::size_t i = 0; i < p.weights.size(); ++i) update(p.weights[i], g.weights[i]);
        for (std::size_t i = 0; i < p.bias.size(); ++i) update(p.bias[i], g.bias[i]);
    }
}

} // namespace dpg::numerics

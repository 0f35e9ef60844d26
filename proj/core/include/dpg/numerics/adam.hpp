#pragma once

#include <cstdint>
#include <vector>

#include "dpg/numerics/mlp.hpp"

namespace dpg::numerics {

/// Moment estimates for one network, stored flat in MlpParameters::for_each_value order.
struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_params(const MlpParameters& params, double beta1 = 0.9,
                                double beta2 = 0.999, double epsilon = 1e-8);

    friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// One bias-corrected Adam descent step: params -= lr * m_hat / (sqrt(v_hat) + eps).
/// Throws std::domain_error naming the first non-finite gradient entry (state and
/// params are left untouched), std::invalid_argument on shape mismatch.
void adam_step(MlpParameters& params, const GradientBundle& grads, AdamState& state,
               double learning_rate);

} // namespace dpg::numerics

#pragma once

#include <cstddef>
#include <vector>

#include "dpg/numerics/activation.hpp"

namespace dpg::ddpg {

/// Training hyperparameters. Defaults: gamma 0.96, learning rates 3e-4,
/// batch 128, replay capacity 2e6 (the reference competition setup), plus
/// conventional DDPG choices for tau and OU noise.
struct DdpgHyperparameters {
    double gamma = 0.96;
    double actor_lr = 3e-4;
    double critic_lr = 3e-4;
    std::size_t batch_size = 128;
    double tau = 1e-3;
    std::size_t warmup_steps = 1000;
    std::size_t buffer_capacity = 2'000'000;
    double ou_theta = 0.15;
    double ou_sigma = 0.2;
    double ou_dt = 1.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Hidden-layer layout shared by actor and critic builders.
struct NetworkSpec {
    std::vector<std::size_t> actor_widths{64, 32};
    std::vector<std::size_t> critic_widths{64, 32};
    numerics::Activation activation = numerics::Activation::Selu;
};

} // namespace dpg::ddpg

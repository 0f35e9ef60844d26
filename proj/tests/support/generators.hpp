#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpg/ddpg/transition.hpp"
#include "dpg/numerics/activation.hpp"
#include "dpg/numerics/mlp.hpp"

namespace dpg::testing {

inline constexpr numerics::Activation kHiddenKinds[] = {
    numerics::Activation::Selu, numerics::Activation::Relu, numerics::Activation::LeakyRelu,
    numerics::Activation::Tanh, numerics::Activation::Sigmoid};

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                          double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random network with 1-3 hidden layers of width <= max_width.
inline numerics::MlpParameters random_net(std::mt19937_64& rng, numerics::Activation hidden,
                                          numerics::Activation output, std::size_t max_width = 32,
                                          std::size_t in_dim = 0, std::size_t out_dim = 0) {
    numerics::MlpShape shape;
    shape.input_dim = in_dim ? in_dim : uniform_size(rng, 1, 6);
    shape.output_dim = out_dim ? out_dim : uniform_size(rng, 1, 4);
    const std::size_t depth = uniform_size(rng, 1, 3);
    for (std::size_t i = 0; i < depth; ++i) shape.hidden_widths.push_back(uniform_size(rng, 1, max_width));
    shape.hidden = hidden;
    shape.output = output;
    return numerics::make_mlp(shape, rng);
}

inline numerics::MlpParameters random_actor(std::mt19937_64& rng, std::size_t state_dim,
                                            std::size_t action_dim, std::size_t width = 8) {
    auto shape = numerics::actor_shape(state_dim, action_dim, {width, width}, numerics::Activation::Selu);
    shape.final_layer_scale = 1.0;
    return numerics::make_mlp(shape, rng);
}

inline numerics::MlpParameters random_critic(std::mt19937_64& rng, std::size_t state_dim,
                                             std::size_t action_dim, std::size_t width = 8) {
    return numerics::make_mlp(
        numerics::critic_shape(state_dim, action_dim, {width, width}, numerics::Activation::Selu), rng);
}

inline ddpg::Transition random_transition(std::mt19937_64& rng, std::size_t state_dim,
                                          std::size_t action_dim) {
    ddpg::Transition t;
    t.state = uniform_vector(rng, state_dim);
    t.action = uniform_vector(rng, action_dim);
    t.reward = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    t.next_state = uniform_vector(rng, state_dim);
    t.terminal = std::bernoulli_distribution(0.2)(rng);
    return t;
}

} // namespace dpg::testing

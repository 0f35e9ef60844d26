#include "dpg/ddpg/updates.hpp"

#include <stdexcept>
#include <string>

namespace dpg::ddpg {

using numerics::ForwardCache;
using numerics::GradientBundle;
using numerics::MlpParameters;

std::vector<double> critic_input(std::span<const double> state, std::span<const double> action) {
    std::vector<double> x;
    x.reserve(state.size() + action.size());
    x.insert(x.end(), state.begin(), state.end());
    x.insert(x.end(), action.begin(), action.end());
    return x;
}

double critic_value(const MlpParameters& critic, std::span<const double> state,
                    std::span<const double> action) {
    const auto x = critic_input(state, action);
    ForwardCache cache;
    return numerics::mlp_forward_into(critic, x, cache)[0];
}

double bellman_target(const Transition& t, const MlpParameters& target_actor,
                      const MlpParameters& target_critic, double gamma) {
    const auto next_action = numerics::mlp_predict(target_actor, t.next_state);
    const double q_next = critic_value(target_critic, t.next_state, next_action);
    return t.reward + gamma * (t.terminal ? 0.0 : 1.0) * q_next;
}

void soft_update(MlpParameters& target, const MlpParameters& source, double tau) {
    if (!target.same_shape(source)) throw std::invalid_argument("soft_update: shape mismatch");
    for (std::size_t k = 0; k < target.layers.size(); ++k) {
        auto& dst = target.layers[k];
        const auto& src = source.layers[k];
        for (std::size_t i = 0; i < dst.weights.size(); ++i) {
            dst.weights[i] = (1.0 - tau) * dst.weights[i] + tau * src.weights[i];
        }
        for (std::size_t i = 0; i < dst.bias.size(); ++i) {
            dst.bias[i] = (1.0 - tau) * dst.bias[i] + tau * src.bias[i];
        }
    }
}

CriticLossGradient critic_loss_gradient(const MlpParameters& critic,
                                        std::span<const Transition> batch,
                                        std::span<const double> targets) {
    if (batch.size() != targets.size() || batch.empty()) {
        throw std::invalid_argument("critic_loss_gradient: batch and targets must be non-empty and equal length");
    }
    CriticLossGradient out{0.0, GradientBundle::zeros_like(critic)};
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    ForwardCache cache;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto x = critic_input(batch[i].state, batch[i].action);
        const double q = numerics::mlp_forward_into(critic, x, cache)[0];
        const double err = q - targets[i];
        out.loss += err * err * inv_b;
        const double upstream = 2.0 * err * inv_b;
        numerics::mlp_backward_accumulate(critic, cache, std::span(&upstream, 1), out.grads);
    }
    return out;
}

double critic_regression_step(MlpParameters& critic, numerics::AdamState& adam,
                              std::span<const Transition> batch, std::span<const double> targets,
                              double learning_rate) {
    auto lg = critic_loss_gradient(critic, batch, targets);
    numerics::adam_step(critic, lg.grads, adam, learning_rate);
    return lg.loss;
}

ActorObjectiveGradient actor_objective_gradient(const MlpParameters& actor,
                                                std::span<const MlpParameters> critics,
                                                std::span<const std::vector<double>> states) {
    if (critics.empty()) throw std::invalid_argument("actor_objective_gradient: no critics");
    if (states.empty()) throw std::invalid_argument("actor_objective_gradient: empty batch");
    const std::size_t state_dim = actor.input_dim();
    const std::size_t action_dim = actor.output_dim();
    for (const auto& critic : critics) {
        if (critic.input_dim() != state_dim + action_dim || critic.output_dim() != 1) {
            throw std::invalid_argument("actor_objective_gradient: critic dims do not match actor");
        }
    }

    ActorObjectiveGradient out{0.0, GradientBundle::zeros_like(actor)};
    const double inv_b = 1.0 / static_cast<double>(states.size());
    const double inv_m = 1.0 / static_cast<double>(critics.size());
    ForwardCache actor_cache;
    ForwardCache critic_cache;
    std::vector<double> dq_da(action_dim);
    std::vector<double> x(state_dim + action_dim);
    const double one = 1.0;
    for (const auto& s : states) {
        const auto a = numerics::mlp_forward_into(actor, s, actor_cache);
        std::copy(s.begin(), s.end(), x.begin());
        std::copy(a.begin(), a.end(), x.begin() + static_cast<std::ptrdiff_t>(state_dim));
        std::fill(dq_da.begin(), dq_da.end(), 0.0);
        double q_sum = 0.0;
        for (std::size_t m = 0; m < critics.size(); ++m) {
            q_sum += numerics::mlp_forward_into(critics[m], x, critic_cache)[0];
            const auto gin = numerics::mlp_input_gradient(critics[m], critic_cache,
                                                          std::span(&one, 1));
            for (std::size_t j = 0; j < action_dim; ++j) dq_da[j] += gin[state_dim + j];
        }
        for (auto& g : dq_da) g *= inv_m;
        out.objective += q_sum * inv_m * inv_b;
        numerics::mlp_backward_accumulate(actor, actor_cache, dq_da, out.grads, inv_b);
    }
    return out;
}

double actor_ascent_step(MlpParameters& actor, numerics::AdamState& adam,
                         std::span<const MlpParameters> critics,
                         std::span<const std::vector<double>> states, double learning_rate) {
    auto og = actor_objective_gradient(actor, critics, states);
    // Adam descends; negate to ascend.
    for (auto& layer : og.grads.layers) {
        for (auto& g : layer.weights) g = -g;
        for (auto& g : layer.bias) g = -g;
    }
    numerics::adam_step(actor, og.grads, adam, learning_rate);
    return og.objective;
}

} // namespace dpg::ddpg

#pragma once

#include <span>
#include <vector>

#include "dpg/ddpg/transition.hpp"
#include "dpg/numerics/adam.hpp"
#include "dpg/numerics/mlp.hpp"

namespace dpg::ddpg {

/// [state, action] as one critic input vector.
std::vector<double> critic_input(std::span<const double> state, std::span<const double> action);

/// Q(state, action) for a single critic.
double critic_value(const numerics::MlpParameters& critic, std::span<const double> state,
                    std::span<const double> action);

/// y = r + gamma * (1 - terminal) * Q'(s', mu'(s')).
double bellman_target(const Transition& t, const numerics::MlpParameters& target_actor,
                      const numerics::MlpParameters& target_critic, double gamma);

/// target <- (1 - tau) * target + tau * source, elementwise.
/// Throws std::invalid_argument on shape mismatch.
void soft_update(numerics::MlpParameters& target, const numerics::MlpParameters& source, double tau);

/// Gradient of the mean squared error (1/B) sum (Q(s_i, a_i) - y_i)^2.
struct CriticLossGradient {
    double loss = 0.0;
    numerics::GradientBundle grads;
};
CriticLossGradient critic_loss_gradient(const numerics::MlpParameters& critic,
                                        std::span<const Transition> batch,
                                        std::span<const double> targets);

/// One Adam step on the critic regression loss. Returns the pre-update loss.
double critic_regression_step(numerics::MlpParameters& critic, numerics::AdamState& adam,
                              std::span<const Transition> batch, std::span<const double> targets,
                              double learning_rate);

/// Objective J = (1/B) sum_i mean_m Q_m(s_i, mu(s_i)) and its gradient w.r.t.
/// the actor parameters via dQ/da * dmu/dtheta.
struct ActorObjectiveGradient {
    double objective = 0.0;
    numerics::GradientBundle grads;
};
ActorObjectiveGradient actor_objective_gradient(const numerics::MlpParameters& actor,
                                                std::span<const numerics::MlpParameters> critics,
                                                std::span<const std::vector<double>> states);

/// One Adam step ascending J. Returns the pre-update objective.
double actor_ascent_step(numerics::MlpParameters& actor, numerics::AdamState& adam,
                         std::span<const numerics::MlpParameters> critics,
                         std::span<const std::vector<double>> states, double learning_rate);

} // namespace dpg::ddpg

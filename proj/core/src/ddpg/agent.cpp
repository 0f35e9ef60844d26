#include "dpg/ddpg/agent.hpp"

#include <cmath>
#include <stdexcept>

#include "dpg/seeding.hpp"

namespace dpg::ddpg {

void DdpgHyperparameters::validate() const {
    auto fail = [](const char* field, const char* why) {
        throw std::invalid_argument(std::string("ddpg.") + field + ": " + why);
    };
    if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma", "must be in (0, 1)");
    if (!(tau > 0.0 && tau <= 1.0)) fail("tau", "must be in (0, 1]");
    if (batch_size < 1) fail("batch_size", "must be >= 1");
    if (!(actor_lr >= 0.0) || !std::isfinite(actor_lr)) fail("actor_lr", "must be finite and >= 0");
    if (!(critic_lr >= 0.0) || !std::isfinite(critic_lr)) fail("critic_lr", "must be finite and >= 0");
    if (buffer_capacity < 1) fail("buffer_capacity", "must be >= 1");
    if (!(ou_sigma >= 0.0)) fail("ou_sigma", "must be >= 0");
    if (!(ou_dt > 0.0)) fail("ou_dt", "must be positive");
}

DdpgAgent::DdpgAgent(std::size_t state_dim, std::size_t action_dim, const NetworkSpec& network,
                     const DdpgHyperparameters& hp, std::uint64_t seed)
    : hp_(hp) {
    hp_.validate();
    std::mt19937_64 actor_rng(derive_seed(seed, "actor-init"));
    std::mt19937_64 critic_rng(derive_seed(seed, "critic-init"));
    actor_ = numerics::make_mlp(
        numerics::actor_shape(state_dim, action_dim, network.actor_widths, network.activation), actor_rng);
    critic_ = numerics::make_mlp(
        numerics::critic_shape(state_dim, action_dim, network.critic_widths, network.activation), critic_rng);
    target_actor_ = actor_;
    target_critic_ = critic_;
    actor_adam_ = numerics::AdamState::for_params(actor_);
    critic_adam_ = numerics::AdamState::for_params(critic_);
}

DdpgAgent::DdpgAgent(numerics::MlpParameters actor, numerics::MlpParameters critic,
                     const DdpgHyperparameters& hp)
    : hp_(hp), actor_(std::move(actor)), critic_(std::move(critic)) {
    hp_.validate();
    actor_.validate();
    critic_.validate();
    if (critic_.input_dim() != actor_.input_dim() + actor_.output_dim() || critic_.output_dim() != 1) {
        throw std::invalid_argument("DdpgAgent: critic dims do not match actor");
    }
    target_actor_ = actor_;
    target_critic_ = critic_;
    actor_adam_ = numerics::AdamState::for_params(actor_);
    critic_adam_ = numerics::AdamState::for_params(critic_);
}

std::optional<TrainStats> DdpgAgent::train_step(const ReplayBuffer& buffer, std::mt19937_64& rng) {
    if (buffer.size() < hp_.batch_size) return std::nullopt;
    const auto batch = buffer.sample(hp_.batch_size, rng);

    std::vector<double> targets(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        targets[i] = bellman_target(batch[i], target_actor_, target_critic_, hp_.gamma);
    }

    TrainStats stats;
    stats.critic_loss = critic_regression_step(critic_, critic_adam_, batch, targets, hp_.critic_lr);

    std::vector<std::vector<double>> states;
    states.reserve(batch.size());
    for (const auto& t : batch) states.push_back(t.state);
    stats.actor_objective = actor_ascent_step(actor_, actor_adam_, std::span(&critic_, 1), states,
                                              hp_.actor_lr);

    soft_update(target_actor_, actor_, hp_.tau);
    soft_update(target_critic_, critic_, hp_.tau);
    return stats;
}

std::vector<double> DdpgAgent::act(std::span<const double> state) const {
    return numerics::mlp_predict(actor_, state);
}

} // namespace dpg::ddpg

#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "dpg/ddpg/hyperparameters.hpp"
#include "dpg/ddpg/replay_buffer.hpp"
#include "dpg/ddpg/updates.hpp"
#include "dpg/numerics/adam.hpp"
#include "dpg/numerics/mlp.hpp"

namespace dpg::ddpg {

struct TrainStats {
    double critic_loss = 0.0;
    double actor_objective = 0.0;
};

/// Actor-critic pair with trailing target networks and per-network Adam state.
class DdpgAgent {
public:
    /// Networks are initialized from streams derived from `seed`.
    DdpgAgent(std::size_t state_dim, std::size_t action_dim, const NetworkSpec& network,
              const DdpgHyperparameters& hp, std::uint64_t seed);

    /// Wraps existing networks; targets start as copies.
    DdpgAgent(numerics::MlpParameters actor, numerics::MlpParameters critic,
              const DdpgHyperparameters& hp);

    /// Samples a batch, regresses the critic to the Bellman target, ascends the
    /// actor on mean Q(s, mu(s)) and soft-updates both targets.
    /// Returns std::nullopt (and changes nothing) while the buffer holds fewer
    /// than batch_size transitions.
    std::optional<TrainStats> train_step(const ReplayBuffer& buffer, std::mt19937_64& rng);

    /// Deterministic action mu(state).
    std::vector<double> act(std::span<const double> state) const;

    const numerics::MlpParameters& actor() const noexcept { return actor_; }
    const numerics::MlpParameters& critic() const noexcept { return critic_; }
    const numerics::MlpParameters& target_actor() const noexcept { return target_actor_; }
    const numerics::MlpParameters& target_critic() const noexcept { return target_critic_; }
    const numerics::AdamState& actor_adam() const noexcept { return actor_adam_; }
    const numerics::AdamState& critic_adam() const noexcept { return critic_adam_; }
    const DdpgHyperparameters& hyperparameters() const noexcept { return hp_; }
    std::size_t state_dim() const noexcept { return actor_.input_dim(); }
    std::size_t action_dim() const noexcept { return actor_.output_dim(); }

private:
    DdpgHyperparameters hp_;
    numerics::MlpParameters actor_;
    numerics::MlpParameters critic_;
    numerics::MlpParameters target_actor_;
    numerics::MlpParameters target_critic_;
    numerics::AdamState actor_adam_;
    numerics::AdamState critic_adam_;
};

} // namespace dpg::ddpg

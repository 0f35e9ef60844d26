#pragma once

#include <optional>
#include <random>
#include <vector>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/ddpg/hyperparameters.hpp"
#include "dpg/ddpg/replay_buffer.hpp"
#include "dpg/numerics/adam.hpp"

namespace dpg::ace {

struct EnsembleTrainStats {
    /// Pre-update regression loss per critic.
    std::vector<double> critic_losses;
    /// Pre-update mean-critic objective per actor.
    std::vector<double> actor_objectives;
    /// How often each target actor won the bootstrap argmax in this batch.
    std::vector<std::size_t> bootstrap_choices;
};

/// Joint training of N actors against a shared critic ensemble.
///
/// Every critic regresses to the ensemble Bellman target (max over target
/// actors of the mean target-critic value), and every actor ascends the mean
/// critic score of its own action, whether or not that action would have been
/// selected.
class EnsembleTrainer {
public:
    EnsembleTrainer(std::vector<numerics::MlpParameters> actors,
                    std::vector<numerics::MlpParameters> critics,
                    const ddpg::DdpgHyperparameters& hp);

    /// Returns std::nullopt (and changes nothing) while the buffer holds fewer
    /// than batch_size transitions.
    std::optional<EnsembleTrainStats> train_step(const ddpg::ReplayBuffer& buffer,
                                                 std::mt19937_64& rng);

    /// Snapshot of the online networks for acting.
    EnsemblePolicy policy() const { return EnsemblePolicy(actors_, critics_); }

    const std::vector<numerics::MlpParameters>& actors() const noexcept { return actors_; }
    const std::vector<numerics::MlpParameters>& critics() const noexcept { return critics_; }
    const std::vector<numerics::MlpParameters>& target_actors() const noexcept { return target_actors_; }
    const std::vector<numerics::MlpParameters>& target_critics() const noexcept { return target_critics_; }

private:
    ddpg::DdpgHyperparameters hp_;
    std::vector<numerics::MlpParameters> actors_;
    std::vector<numerics::MlpParameters> critics_;
    std::vector<numerics::MlpParameters> target_actors_;
    std::vector<numerics::MlpParameters> target_critics_;
    std::vector<numerics::AdamState> actor_adam_;
    std::vector<numerics::AdamState> critic_adam_;
};

} // namespace dpg::ace

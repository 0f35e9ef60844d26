#include "dpg/ace/ensemble_trainer.hpp"

#include <limits>
#include <stdexcept>

#include "dpg/ddpg/updates.hpp"

namespace dpg::ace {

EnsembleTrainer::EnsembleTrainer(std::vector<numerics::MlpParameters> actors,
                                 std::vector<numerics::MlpParameters> critics,
                                 const ddpg::DdpgHyperparameters& hp)
    : hp_(hp), actors_(std::move(actors)), critics_(std::move(critics)) {
    hp_.validate();
    if (critics_.empty()) throw std::invalid_argument("EnsembleTrainer: training needs at least one critic");
    // Reuse the policy's dimension checks.
    (void)EnsemblePolicy(actors_, critics_);
    target_actors_ = actors_;
    target_critics_ = critics_;
    for (const auto& a : actors_) actor_adam_.push_back(numerics::AdamState::for_params(a));
    for (const auto& c : critics_) critic_adam_.push_back(numerics::AdamState::for_params(c));
}

std::optional<EnsembleTrainStats> EnsembleTrainer::train_step(const ddpg::ReplayBuffer& buffer,
                                                              std::mt19937_64& rng) {
    if (buffer.size() < hp_.batch_size) return std::nullopt;
    const auto batch = buffer.sample(hp_.batch_size, rng);

    EnsembleTrainStats stats;
    stats.bootstrap_choices.assign(actors_.size(), 0);
    std::vector<double> targets(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        std::size_t chosen = 0;
        double best = -std::numeric_limits<double>::infinity();
        std::size_t j = 0;
        targets[i] = ace_bellman_target(
            batch[i], target_actors_,
            [&](std::span<const double> s, std::span<const double> a) {
                const double q = score_action(target_critics_, s, a);
                if (j == 0 || q > best) {
                    best = q;
                    chosen = j;
                }
                ++j;
                return q;
            },
            hp_.gamma);
        ++stats.bootstrap_choices[chosen];
    }

    for (std::size_t m = 0; m < critics_.size(); ++m) {
        stats.critic_losses.push_back(
            ddpg::critic_regression_step(critics_[m], critic_adam_[m], batch, targets, hp_.critic_lr));
    }

    std::vector<std::vector<double>> states;
    states.reserve(batch.size());
    for (const auto& t : batch) states.push_back(t.state);
    for (std::size_t a = 0; a < actors_.size(); ++a) {
        stats.actor_objectives.push_back(
            ddpg::actor_ascent_step(actors_[a], actor_adam_[a], critics_, states, hp_.actor_lr));
    }

    for (std::size_t a = 0; a < actors_.size(); ++a) ddpg::soft_update(target_actors_[a], actors_[a], hp_.tau);
    for (std::size_t m = 0; m < critics_.size(); ++m) ddpg::soft_update(target_critics_[m], critics_[m], hp_.tau);
    return stats;
}

} // namespace dpg::ace

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/ddpg/ou_noise.hpp"
#include "dpg/ddpg/transition.hpp"
#include "dpg/envs/environment.hpp"
#include "dpg/envs/wrappers.hpp"

namespace dpg::rollout {

/// Summary of one finished episode.
struct EpisodeStats {
    std::uint32_t worker_id = 0;
    std::size_t episode_index = 0;
    double total_reward = 0.0;
    /// Agent steps.
    std::size_t steps = 0;
    bool fell = false;
    /// Ended by the episode cap rather than a fall.
    bool timed_out = false;
    /// Mean critic score of the executed action per step (empty when no critic ranked it).
    std::vector<double> critic_scores;
};

/// Exploration settings for one collector.
struct ExplorationConfig {
    double ou_theta = 0.15;
    double ou_sigma = 0.2;
    double ou_dt = 1.0;
    /// Initial steps with uniformly random actions.
    std::size_t random_steps = 0;
    /// False for evaluation: no random phase, no noise.
    bool explore = true;
};

/// Drives one environment instance: frame stacking, action selection with
/// optional OU noise added after selection, episode bookkeeping. Episode k is
/// reset with derive_seed(seed, k).
class Collector {
public:
    struct Step {
        ddpg::Transition transition;
        /// Selection diagnostics (absent during the random phase).
        std::optional<ace::SelectionTrace> trace;
        std::optional<EpisodeStats> finished;
    };

    Collector(std::uint32_t worker_id, std::unique_ptr<envs::Environment> env,
              std::size_t frame_stack, std::uint64_t seed, ExplorationConfig exploration);

    /// One agent step under `policy`. Starts a new episode when needed.
    Step step(const ace::EnsemblePolicy& policy);

    std::size_t total_steps() const noexcept { return total_steps_; }
    std::size_t episodes_finished() const noexcept { return episodes_finished_; }
    std::size_t state_dim() const noexcept { return stack_.stacked_dim(); }
    std::size_t action_dim() const noexcept { return env_->action_dim(); }
    std::uint32_t worker_id() const noexcept { return worker_id_; }

private:
    void begin_episode();

    std::uint32_t worker_id_;
    std::unique_ptr<envs::Environment> env_;
    envs::ObservationStack stack_;
    std::uint64_t seed_;
    ExplorationConfig exploration_;
    ddpg::OuNoise noise_;
    std::mt19937_64 rng_;

    std::vector<double> state_;
    bool in_episode_ = false;
    EpisodeStats current_;
    std::size_t total_steps_ = 0;
    std::size_t episodes_finished_ = 0;
};

} // namespace dpg::rollout

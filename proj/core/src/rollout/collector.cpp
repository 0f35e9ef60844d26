#include "dpg/rollout/collector.hpp"

#include <algorithm>
#include <stdexcept>

#include "dpg/seeding.hpp"

namespace dpg::rollout {

Collector::Collector(std::uint32_t worker_id, std::unique_ptr<envs::Environment> env,
                     std::size_t frame_stack, std::uint64_t seed, ExplorationConfig exploration)
    : worker_id_(worker_id),
      env_(std::move(env)),
      stack_(env_ ? env_->observation_dim() : 1, frame_stack),
      seed_(seed),
      exploration_(exploration),
      noise_(env_ ? env_->action_dim() : 1, exploration.ou_theta, exploration.ou_sigma, exploration.ou_dt),
      rng_(derive_seed(seed, "collector")) {
    if (!env_) throw std::invalid_argument("Collector: null environment");
}

void Collector::begin_episode() {
    const auto obs = env_->reset(derive_seed(seed_, episodes_finished_));
    stack_.clear();
    state_ = stack_.push(obs);
    noise_.reset();
    current_ = EpisodeStats{};
    current_.worker_id = worker_id_;
    current_.episode_index = episodes_finished_;
    in_episode_ = true;
}

Collector::Step Collector::step(const ace::EnsemblePolicy& policy) {
    if (policy.state_dim() != stack_.stacked_dim() || policy.action_dim() != env_->action_dim()) {
        throw std::invalid_argument("Collector: policy dims do not match environment");
    }
    if (!in_episode_) begin_episode();

    Step out;
    std::vector<double> action;
    const bool random_phase = exploration_.explore && total_steps_ < exploration_.random_steps;
    if (random_phase) {
        std::uniform_real_distribution<double> uniform(-1.0, 1.0);
        action.resize(env_->action_dim());
        for (auto& a : action) a = uniform(rng_);
    } else {
        auto selection = policy.select_action(state_);
        action = std::move(selection.action);
        if (!selection.trace.scores.empty()) current_.critic_scores.push_back(selection.trace.chosen_score);
        out.trace = std::move(selection.trace);
        if (exploration_.explore) {
            const auto& noise = noise_.step(rng_);
            for (std::size_t i = 0; i < action.size(); ++i) {
                action[i] = std::clamp(action[i] + noise[i], -1.0, 1.0);
            }
        }
    }

    auto result = env_->step(action);
    auto next_state = stack_.push(result.observation);

    out.transition.state = std::move(state_);
    out.transition.action = std::move(action);
    out.transition.reward = result.reward;
    out.transition.next_state = next_state;
    out.transition.terminal = result.terminal && !result.timed_out;
    out.transition.worker_id = worker_id_;
    state_ = std::move(next_state);

    ++total_steps_;
    current_.total_reward += result.reward;
    ++current_.steps;
    if (result.terminal) {
        current_.fell = result.fell;
        current_.timed_out = result.timed_out;
        out.finished = std::move(current_);
        ++episodes_finished_;
        in_episode_ = false;
    }
    return out;
}

} // namespace dpg::rollout

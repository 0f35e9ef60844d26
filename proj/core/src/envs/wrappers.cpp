#include "dpg/envs/wrappers.hpp"

#include <stdexcept>
#include <string>

namespace dpg::envs {

StepResult frame_skip_step(Environment& env, std::span<const double> action, int k) {
    if (k < 1) throw std::invalid_argument("frame_skip_step: k must be >= 1, got " + std::to_string(k));
    StepResult total;
    for (int i = 0; i < k; ++i) {
        auto inner = env.step(action);
        total.reward += inner.reward;
        total.observation = std::move(inner.observation);
        total.distance = inner.distance;
        total.fell = total.fell || inner.fell;
        total.timed_out = total.timed_out || inner.timed_out;
        total.terminal = total.terminal || inner.terminal;
        if (total.terminal) break;
    }
    return total;
}

FrameSkip::FrameSkip(std::unique_ptr<Environment> inner, int k) : inner_(std::move(inner)), k_(k) {
    if (!inner_) throw std::invalid_argument("FrameSkip: null environment");
    if (k_ < 1) throw std::invalid_argument("FrameSkip: k must be >= 1, got " + std::to_string(k_));
}

std::unique_ptr<Environment> FrameSkip::clone() const {
    return std::make_unique<FrameSkip>(inner_->clone(), k_);
}

ObservationStack::ObservationStack(std::size_t base_dim, std::size_t depth)
    : base_dim_(base_dim), depth_(depth) {
    if (depth_ < 1) throw std::invalid_argument("ObservationStack: depth must be >= 1");
    if (base_dim_ < 1) throw std::invalid_argument("ObservationStack: base dim must be >= 1");
}

std::vector<double> ObservationStack::push(std::span<const double> obs) {
    if (obs.size() != base_dim_) {
        throw std::invalid_argument("ObservationStack: observation length " +
                                    std::to_string(obs.size()) + " != " + std::to_string(base_dim_));
    }
    history_.emplace_back(obs.begin(), obs.end());
    while (history_.size() > depth_) history_.pop_front();
    return stacked();
}

std::vector<double> ObservationStack::stacked() const {
    std::vector<double> out;
    if (history_.empty()) return out;
    out.reserve(stacked_dim());
    for (std::size_t pad = history_.size(); pad < depth_; ++pad) {
        out.insert(out.end(), history_.front().begin(), history_.front().end());
    }
    for (const auto& obs : history_) out.insert(out.end(), obs.begin(), obs.end());
    return out;
}

} // namespace dpg::envs

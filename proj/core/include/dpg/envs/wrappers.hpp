#pragma once

#include <deque>

#include "dpg/envs/environment.hpp"

namespace dpg::envs {

/// Applies `action` up to k times, stopping early at a terminal step. Returns the
/// last observation, the summed reward and the OR of the terminal/diagnostic flags.
/// Throws std::invalid_argument if k < 1.
StepResult frame_skip_step(Environment& env, std::span<const double> action, int k = 4);

/// Environment adapter that repeats every action k times.
class FrameSkip final : public Environment {
public:
    FrameSkip(std::unique_ptr<Environment> inner, int k);

    std::vector<double> reset(std::uint64_t seed) override { return inner_->reset(seed); }
    StepResult step(std::span<const double> action) override {
        return frame_skip_step(*inner_, action, k_);
    }
    std::size_t observation_dim() const noexcept override { return inner_->observation_dim(); }
    std::size_t action_dim() const noexcept override { return inner_->action_dim(); }
    std::size_t step_count() const noexcept override { return inner_->step_count(); }
    std::string name() const override { return inner_->name(); }
    std::unique_ptr<Environment> clone() const override;

    int skip() const noexcept { return k_; }
    Environment& inner() noexcept { return *inner_; }
    const Environment& inner() const noexcept { return *inner_; }

private:
    std::unique_ptr<Environment> inner_;
    int k_;
};

/// Concatenation of the k most recent observations, oldest first. Until k
/// observations have been pushed the earliest one is repeated as padding.
class ObservationStack {
public:
    ObservationStack(std::size_t base_dim, std::size_t depth = 3);

    /// Pushes `obs` and returns the stacked state. Throws std::invalid_argument
    /// on length mismatch.
    std::vector<double> push(std::span<const double> obs);
    /// Stacked state for the current history (empty before the first push).
    std::vector<double> stacked() const;
    void clear() noexcept { history_.clear(); }

    std::size_t depth() const noexcept { return depth_; }
    std::size_t base_dim() const noexcept { return base_dim_; }
    std::size_t stacked_dim() const noexcept { return depth_ * base_dim_; }

private:
    std::size_t base_dim_;
    std::size_t depth_;
    std::deque<std::vector<double>> history_;
};

} // namespace dpg::envs

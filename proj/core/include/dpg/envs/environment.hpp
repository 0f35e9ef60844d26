#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dpg::envs {

/// Outcome of one environment transition.
struct StepResult {
    std::vector<double> observation;
    double reward = 0.0;
    /// Episode is over (fall, absorbing failure, or the episode cap).
    bool terminal = false;
    /// Diagnostics.
    bool fell = false;
    bool timed_out = false;
    double distance = 0.0;
};

/// Continuous-control environment with actions in [-1, 1]^d.
///
/// Instances are single-threaded; distinct instances share no state.
class Environment {
public:
    virtual ~Environment() = default;

    /// Deterministic: the same seed yields the same initial observation and the
    /// same dynamics under the same action sequence.
    virtual std::vector<double> reset(std::uint64_t seed) = 0;

    /// Out-of-range action coordinates are clamped (with a one-time warning).
    /// Throws std::logic_error when called after a terminal step or before reset.
    virtual StepResult step(std::span<const double> action) = 0;

    virtual std::size_t observation_dim() const noexcept = 0;
    virtual std::size_t action_dim() const noexcept = 0;
    /// Underlying simulator steps taken since reset.
    virtual std::size_t step_count() const noexcept = 0;
    virtual std::string name() const = 0;

    /// Deep copy including the full dynamic state.
    virtual std::unique_ptr<Environment> clone() const = 0;
};

/// Clamps each coordinate into [-1, 1]. Returns true if anything was clamped.
bool clamp_action(std::span<const double> action, std::vector<double>& out);

/// Emits a warning to std::clog; used by environments for clamped actions.
void warn(const std::string& message);

} // namespace dpg::envs

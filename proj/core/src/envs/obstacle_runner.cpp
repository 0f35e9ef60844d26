#include "dpg/envs/obstacle_runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dpg/seeding.hpp"

namespace dpg::envs {

void ObstacleRunnerConfig::validate() const {
    auto fail = [](const char* field, const char* why) {
        throw std::invalid_argument(std::string("obstacle_runner.") + field + ": " + why);
    };
    if (episode_cap < 1) fail("episode_cap", "must be >= 1");
    if (!(obstacle_density >= 0.0 && obstacle_density <= 1.0)) fail("obstacle_density", "must be in [0, 1]");
    if (unstable_collapse_steps < 1) fail("unstable_collapse_steps", "must be >= 1");
    if (!(posture_instability_threshold > 0.0)) fail("posture_instability_threshold", "must be positive");
    if (!(dt > 0.0)) fail("dt", "must be positive");
    if (!(max_speed > 0.0)) fail("max_speed", "must be positive");
    if (!(fall_angle > posture_instability_threshold)) fail("fall_angle", "must exceed the instability threshold");
    if (!(sensor_horizon > 0.0)) fail("sensor_horizon", "must be positive");
    if (!(posture_noise >= 0.0)) fail("posture_noise", "must be non-negative");
}

ObstacleRunner::ObstacleRunner(ObstacleRunnerConfig config) : config_(config) {
    config_.validate();
}

std::vector<double> ObstacleRunner::reset(std::uint64_t seed) {
    const std::uint64_t episode_seed = derive_seed(config_.rng_seed, seed);
    std::mt19937_64 rng(episode_seed);
    disturbance_.seed(derive_seed(episode_seed, "disturbance"));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // One Bernoulli draw per unit cell of reachable track, jittered inside the cell.
    const double reach = config_.max_speed * config_.dt * static_cast<double>(config_.episode_cap);
    const auto cells = static_cast<std::size_t>(std::ceil(reach)) + 1;
    obstacles_.clear();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const bool place = unit(rng) < config_.obstacle_density;
        const double offset = unit(rng);
        const double where = static_cast<double>(cell) + offset;
        if (place && where >= config_.start_clearance) obstacles_.push_back(where);
    }
    next_obstacle_ = 0;
    position_ = 0.0;
    speed_ = 0.0;
    posture_ = 0.0;
    phase_ = 0.0;
    unstable_ = false;
    unstable_steps_ = 0;
    steps_ = 0;
    started_ = true;
    done_ = false;
    return observe();
}

StepResult ObstacleRunner::step(std::span<const double> action) {
    if (!started_) throw std::logic_error("obstacle_runner: step before reset");
    if (done_) throw std::logic_error("obstacle_runner: step after terminal");
    if (action.size() != kActionDim) throw std::invalid_argument("obstacle_runner: action must have length 2");

    std::vector<double> a;
    if (clamp_action(action, a) && !warned_) {
        warn("obstacle_runner: action clamped to [-1, 1]");
        warned_ = true;
    }
    const double drive = a[0];
    const double brace = a[1];
    const double dt = config_.dt;
    const double start = position_;

    StepResult result;
    if (!unstable_) {
        const double accel = config_.drive_gain * drive - config_.drag * speed_ -
                             config_.brace_drag * std::abs(brace) * speed_;
        speed_ = std::clamp(speed_ + dt * accel, 0.0, config_.max_speed);
        phase_ = std::fmod(phase_ + config_.stride_rate * speed_ * dt, 2.0 * std::numbers::pi);
        const double target = config_.lean_per_speed * speed_ - config_.brace_gain * brace +
                              config_.gait_amplitude * std::sin(phase_) * (speed_ / config_.max_speed);
        posture_ += dt * config_.posture_rate * (target - posture_);
        if (config_.posture_noise > 0.0) {
            posture_ += config_.posture_noise * std::sqrt(dt) * std::normal_distribution<double>()(disturbance_);
        }
        position_ += speed_ * dt;

        while (next_obstacle_ < obstacles_.size() && obstacles_[next_obstacle_] <= position_) {
            if (std::abs(posture_) > config_.posture_instability_threshold) unstable_ = true;
            ++next_obstacle_;
        }
    } else {
        // Absorbing regime: the lean runs away regardless of the action.
        ++unstable_steps_;
        const double direction = posture_ >= 0.0 ? 1.0 : -1.0;
        posture_ += direction * config_.collapse_rate * dt * static_cast<double>(unstable_steps_);
        speed_ *= 0.8;
        position_ += speed_ * dt;
        while (next_obstacle_ < obstacles_.size() && obstacles_[next_obstacle_] <= position_) {
            ++next_obstacle_;
        }
        if (std::abs(posture_) >= config_.fall_angle ||
            unstable_steps_ >= config_.unstable_collapse_steps) {
            result.fell = true;
        }
    }
    ++steps_;

    result.reward = position_ - start;
    result.distance = position_;
    result.timed_out = !result.fell && steps_ >= config_.episode_cap;
    result.terminal = result.fell || result.timed_out;
    result.observation = observe();
    done_ = result.terminal;
    return result;
}

double ObstacleRunner::distance_to_next_obstacle() const noexcept {
    if (next_obstacle_ >= obstacles_.size()) return std::numeric_limits<double>::infinity();
    return obstacles_[next_obstacle_] - position_;
}

std::vector<double> ObstacleRunner::observe() const {
    auto sensed = [&](std::size_t index) {
        if (index >= obstacles_.size()) return 1.0;
        return std::min(1.0, (obstacles_[index] - position_) / config_.sensor_horizon);
    };
    return {speed_ / config_.max_speed, posture_,
            std::sin(phase_), std::cos(phase_),
            sensed(next_obstacle_), sensed(next_obstacle_ + 1)};
}

void ObstacleRunner::set_kinematics(double position, double speed, double posture, double gait_phase) {
    position_ = position;
    speed_ = std::clamp(speed, 0.0, config_.max_speed);
    posture_ = posture;
    phase_ = gait_phase;
    next_obstacle_ = static_cast<std::size_t>(
        std::upper_bound(obstacles_.begin(), obstacles_.end(), position_) - obstacles_.begin());
    started_ = true;
    done_ = false;
}

void ObstacleRunner::set_obstacles(std::vector<double> positions) {
    std::sort(positions.begin(), positions.end());
    obstacles_ = std::move(positions);
    next_obstacle_ = static_cast<std::size_t>(
        std::upper_bound(obstacles_.begin(), obstacles_.end(), position_) - obstacles_.begin());
}

void ObstacleRunner::force_unstable() {
    unstable_ = true;
}

std::unique_ptr<Environment> ObstacleRunner::clone() const {
    return std::make_unique<ObstacleRunner>(*this);
}

} // namespace dpg::envs

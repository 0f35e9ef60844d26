#pragma once

#include <random>
#include <vector>

#include "dpg/envs/environment.hpp"

namespace dpg::envs {

struct ObstacleRunnerConfig {
    /// Simulator steps per episode.
    std::size_t episode_cap = 1000;
    /// Probability of an obstacle per unit of track.
    double obstacle_density = 0.08;
    /// |posture| above this while crossing an obstacle trips the runner.
    double posture_instability_threshold = 0.5;
    /// Once tripped, the runner falls after at most this many simulator steps.
    std::size_t unstable_collapse_steps = 8;
    std::uint64_t rng_seed = 0;

    // Dynamics. Not part of the public tuning surface but kept configurable.
    double dt = 0.05;
    double max_speed = 3.0;
    double drive_gain = 3.0;
    double drag = 1.0;
    double lean_per_speed = 0.25;
    double brace_gain = 0.3;
    double brace_drag = 1.0;
    double posture_rate = 6.0;
    double gait_amplitude = 0.15;
    double stride_rate = 2.5;
    double collapse_rate = 2.0;
    double fall_angle = 1.2;
    /// Std-dev of the unobserved lean disturbance, per sqrt(second).
    double posture_noise = 0.0;
    /// Obstacle-free run-up from the start line.
    double start_clearance = 3.0;
    /// Obstacle distances are observed up to this horizon.
    double sensor_horizon = 4.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// One-dimensional runner on a track with randomly placed obstacles.
///
/// Action: [drive, brace], both in [-1, 1]. Drive accelerates or brakes; brace
/// pulls the forward lean back at the cost of extra drag. Lean grows with speed
/// and oscillates with the gait. Crossing an obstacle with |lean| above the
/// instability threshold trips the runner into an absorbing unstable regime:
/// actions no longer affect posture, the lean diverges, and the episode ends
/// with a fall within unstable_collapse_steps. Reward is the forward distance
/// covered in the step.
///
/// Observation: [speed / max_speed, lean, sin(gait), cos(gait),
///               next obstacle distance / horizon, second obstacle distance / horizon].
class ObstacleRunner final : public Environment {
public:
    static constexpr std::size_t kObservationDim = 6;
    static constexpr std::size_t kActionDim = 2;

    ObstacleRunner() : ObstacleRunner(ObstacleRunnerConfig{}) {}
    explicit ObstacleRunner(ObstacleRunnerConfig config);

    std::vector<double> reset(std::uint64_t seed) override;
    StepResult step(std::span<const double> action) override;

    std::size_t observation_dim() const noexcept override { return kObservationDim; }
    std::size_t action_dim() const noexcept override { return kActionDim; }
    std::size_t step_count() const noexcept override { return steps_; }
    std::string name() const override { return "obstacle_runner"; }
    std::unique_ptr<Environment> clone() const override;

    double position() const noexcept { return position_; }
    double speed() const noexcept { return speed_; }
    double posture() const noexcept { return posture_; }
    double gait_phase() const noexcept { return phase_; }
    bool unstable() const noexcept { return unstable_; }
    bool done() const noexcept { return done_; }
    const std::vector<double>& obstacles() const noexcept { return obstacles_; }
    const ObstacleRunnerConfig& config() const noexcept { return config_; }

    /// Distance from the runner to the next obstacle ahead (infinity if none).
    double distance_to_next_obstacle() const noexcept;

    /// Test hooks: overwrite the kinematic state, or trip the runner directly.
    void set_kinematics(double position, double speed, double posture, double gait_phase);
    void set_obstacles(std::vector<double> positions);
    void force_unstable();

    std::vector<double> observe() const;

private:
    ObstacleRunnerConfig config_;
    std::vector<double> obstacles_;
    std::mt19937_64 disturbance_;
    std::size_t next_obstacle_ = 0;
    double position_ = 0.0;
    double speed_ = 0.0;
    double posture_ = 0.0;
    double phase_ = 0.0;
    bool unstable_ = false;
    std::size_t unstable_steps_ = 0;
    std::size_t steps_ = 0;
    bool started_ = false;
    bool done_ = false;
    bool warned_ = false;
};

} // namespace dpg::envs

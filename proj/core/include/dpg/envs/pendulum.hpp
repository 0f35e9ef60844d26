#pragma once

#include <random>

#include "dpg/envs/environment.hpp"

namespace dpg::envs {

/// Classic torque-limited pendulum swing-up. Observation is
/// [cos(theta), sin(theta), theta_dot]; theta = 0 is upright. Reward is
/// -(theta^2 + 0.1 theta_dot^2 + 0.001 u^2) with u the applied torque.
class Pendulum final : public Environment {
public:
    struct Config {
        std::size_t episode_cap = 200;
        double max_speed = 8.0;
        double max_torque = 2.0;
        double dt = 0.05;
        double gravity = 10.0;
        double mass = 1.0;
        double length = 1.0;
    };

    Pendulum() : Pendulum(Config{}) {}
    explicit Pendulum(Config config);

    std::vector<double> reset(std::uint64_t seed) override;
    StepResult step(std::span<const double> action) override;

    std::size_t observation_dim() const noexcept override { return 3; }
    std::size_t action_dim() const noexcept override { return 1; }
    std::size_t step_count() const noexcept override { return steps_; }
    std::string name() const override { return "pendulum"; }
    std::unique_ptr<Environment> clone() const override;

    /// Overrides the dynamic state (test fixtures).
    void set_state(double theta, double theta_dot);
    double theta() const noexcept { return theta_; }
    double theta_dot() const noexcept { return theta_dot_; }
    const Config& config() const noexcept { return config_; }

private:
    std::vector<double> observe() const;

    Config config_;
    double theta_ = 0.0;
    double theta_dot_ = 0.0;
    std::size_t steps_ = 0;
    bool started_ = false;
    bool done_ = false;
    bool warned_ = false;
};

} // namespace dpg::envs

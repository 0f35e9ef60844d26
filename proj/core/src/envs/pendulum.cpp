#include "dpg/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpg::envs {

namespace {

double wrap_angle(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double y = std::fmod(x + std::numbers::pi, two_pi);
    if (y < 0.0) y += two_pi;
    return y - std::numbers::pi;
}

} // namespace

Pendulum::Pendulum(Config config) : config_(config) {
    if (config_.episode_cap < 1) throw std::invalid_argument("pendulum: episode_cap must be >= 1");
}

std::vector<double> Pendulum::reset(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> speed(-1.0, 1.0);
    theta_ = angle(rng);
    theta_dot_ = speed(rng);
    steps_ = 0;
    started_ = true;
    done_ = false;
    return observe();
}

void Pendulum::set_state(double theta, double theta_dot) {
    theta_ = theta;
    theta_dot_ = theta_dot;
    started_ = true;
    done_ = false;
}

StepResult Pendulum::step(std::span<const double> action) {
    if (!started_) throw std::logic_error("pendulum: step before reset");
    if (done_) throw std::logic_error("pendulum: step after terminal");
    if (action.size() != 1) throw std::invalid_argument("pendulum: action must have length 1");

    std::vector<double> a;
    if (clamp_action(action, a) && !warned_) {
        warn("pendulum: action clamped to [-1, 1]");
        warned_ = true;
    }
    const double u = a[0] * config_.max_torque;
    const double th = wrap_angle(theta_);
    const double cost = th * th + 0.1 * theta_dot_ * theta_dot_ + 0.001 * u * u;

    const double g = config_.gravity;
    const double m = config_.mass;
    const double l = config_.length;
    const double dt = config_.dt;
    theta_dot_ += (3.0 * g / (2.0 * l) * std::sin(theta_) + 3.0 / (m * l * l) * u) * dt;
    theta_dot_ = std::clamp(theta_dot_, -config_.max_speed, config_.max_speed);
    theta_ += theta_dot_ * dt;
    ++steps_;

    StepResult result;
    result.observation = observe();
    result.reward = -cost;
    result.timed_out = steps_ >= config_.episode_cap;
    result.terminal = result.timed_out;
    done_ = result.terminal;
    return result;
}

std::vector<double> Pendulum::observe() const {
    return {std::cos(theta_), std::sin(theta_), theta_dot_};
}

std::unique_ptr<Environment> Pendulum::clone() const {
    return std::make_unique<Pendulum>(*this);
}

} // namespace dpg::envs

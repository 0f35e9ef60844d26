#pragma once

#include <random>
#include <vector>

namespace dpg::ddpg {

/// Ornstein-Uhlenbeck exploration process, mean-reverting to zero:
/// x <- x + theta * (0 - x) * dt + sigma * sqrt(dt) * N(0, 1).
class OuNoise {
public:
    OuNoise(std::size_t dim, double theta = 0.15, double sigma = 0.2, double dt = 1.0);

    /// Advances the process one step and returns the new state.
    const std::vector<double>& step(std::mt19937_64& rng);
    void reset() noexcept;

    const std::vector<double>& state() const noexcept { return x_; }
    void set_state(std::vector<double> x);
    double theta() const noexcept { return theta_; }
    double sigma() const noexcept { return sigma_; }
    double dt() const noexcept { return dt_; }

private:
    std::vector<double> x_;
    double theta_;
    double sigma_;
    double dt_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace dpg::ddpg

#include "dpg/ddpg/ou_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpg::ddpg {

OuNoise::OuNoise(std::size_t dim, double theta, double sigma, double dt)
    : x_(dim, 0.0), theta_(theta), sigma_(sigma), dt_(dt) {
    if (!(dt_ > 0.0)) throw std::invalid_argument("OuNoise: dt must be positive");
    if (!(sigma_ >= 0.0)) throw std::invalid_argument("OuNoise: sigma must be non-negative");
}

const std::vector<double>& OuNoise::step(std::mt19937_64& rng) {
    const double diffusion = sigma_ * std::sqrt(dt_);
    for (auto& x : x_) {
        x += theta_ * (0.0 - x) * dt_ + diffusion * normal_(rng);
    }
    return x_;
}

void OuNoise::reset() noexcept {
    std::fill(x_.begin(), x_.end(), 0.0);
    normal_.reset();
}

void OuNoise::set_state(std::vector<double> x) {
    if (x.size() != x_.size()) throw std::invalid_argument("OuNoise: state length mismatch");
    x_ = std::move(x);
}

} // namespace dpg::ddpg

#include "dpg/envs/environment.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>

namespace dpg::envs {

bool clamp_action(std::span<const double> action, std::vector<double>& out) {
    out.resize(action.size());
    bool clamped = false;
    for (std::size_t i = 0; i < action.size(); ++i) {
        const double a = action[i];
        // NaN compares false both ways; map it to 0 and report it as clamped.
        double c = a != a ? 0.0 : std::clamp(a, -1.0, 1.0);
        clamped = clamped || c != a;
        out[i] = c;
    }
    return clamped;
}

void warn(const std::string& message) {
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    std::clog << "[dpg][warn] " << message << '\n';
}

} // namespace dpg::envs

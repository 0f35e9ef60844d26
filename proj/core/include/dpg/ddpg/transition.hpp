#pragma once

#include <cstdint>
#include <vector>

namespace dpg::ddpg {

/// One experience tuple (s, a, r, s', terminal).
///
/// `terminal` masks the bootstrap term; episode-cap timeouts are stored with
/// terminal = false.
struct Transition {
    std::vector<double> state;
    std::vector<double> action;
    double reward = 0.0;
    std::vector<double> next_state;
    bool terminal = false;
    /// Rollout worker that produced the transition.
    std::uint32_t worker_id = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

} // namespace dpg::ddpg

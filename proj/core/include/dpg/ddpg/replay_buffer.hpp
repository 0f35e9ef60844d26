#pragma once

#include <cstddef>
#include <mutex>
#include <random>
#include <vector>

#include "dpg/ddpg/transition.hpp"

namespace dpg::ddpg {

/// Bounded ring of transitions with uniform sampling.
///
/// All members lock an internal mutex, so rollout workers may store while the
/// trainer samples.
class ReplayBuffer {
public:
    static constexpr std::size_t kDefaultCapacity = 2'000'000;

    ReplayBuffer(std::size_t capacity, std::size_t state_dim, std::size_t action_dim);

    ReplayBuffer(const ReplayBuffer&) = delete;
    ReplayBuffer& operator=(const ReplayBuffer&) = delete;

    /// Appends, overwriting the oldest entry once full. Throws std::invalid_argument
    /// on dimension mismatch, an action outside [-1, 1] or a non-finite reward.
    void store(Transition transition);

    /// n draws, uniform with replacement. Throws std::logic_error when empty.
    std::vector<Transition> sample(std::size_t n, std::mt19937_64& rng) const;

    std::size_t size() const;
    /// Number of store() calls ever made.
    std::size_t total_stored() const;
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t state_dim() const noexcept { return state_dim_; }
    std::size_t action_dim() const noexcept { return action_dim_; }

    /// Current contents, oldest first.
    std::vector<Transition> contents() const;

private:
    std::size_t capacity_;
    std::size_t state_dim_;
    std::size_t action_dim_;
    mutable std::mutex mutex_;
    std::vector<Transition> storage_;
    std::size_t cursor_ = 0;
    std::size_t total_ = 0;
};

} // namespace dpg::ddpg

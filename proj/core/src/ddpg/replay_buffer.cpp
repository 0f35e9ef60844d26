#include "dpg/ddpg/replay_buffer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpg::ddpg {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t state_dim, std::size_t action_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim) {
    if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
}

void ReplayBuffer::store(Transition transition) {
    if (transition.state.size() != state_dim_ || transition.next_state.size() != state_dim_) {
        throw std::invalid_argument("ReplayBuffer::store: state length mismatch (expected " +
                                    std::to_string(state_dim_) + ")");
    }
    if (transition.action.size() != action_dim_) {
        throw std::invalid_argument("ReplayBuffer::store: action length " +
                                    std::to_string(transition.action.size()) + " != " +
                                    std::to_string(action_dim_));
    }
    for (double a : transition.action) {
        if (!(a >= -1.0 && a <= 1.0)) {
            throw std::invalid_argument("ReplayBuffer::store: action outside [-1, 1]");
        }
    }
    if (!std::isfinite(transition.reward)) {
        throw std::invalid_argument("ReplayBuffer::store: non-finite reward");
    }

    std::lock_guard lock(mutex_);
    if (storage_.size() < capacity_) {
        storage_.push_back(std::move(transition));
    } else {
        storage_[cursor_] = std::move(transition);
    }
    cursor_ = (cursor_ + 1) % capacity_;
    ++total_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t n, std::mt19937_64& rng) const {
    std::lock_guard lock(mutex_);
    if (storage_.empty()) throw std::logic_error("ReplayBuffer::sample: buffer is empty");
    std::uniform_int_distribution<std::size_t> pick(0, storage_.size() - 1);
    std::vector<Transition> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) batch.push_back(storage_[pick(rng)]);
    return batch;
}

std::size_t ReplayBuffer::size() const {
    std::lock_guard lock(mutex_);
    return storage_.size();
}

std::size_t ReplayBuffer::total_stored() const {
    std::lock_guard lock(mutex_);
    return total_;
}

std::vector<Transition> ReplayBuffer::contents() const {
    std::lock_guard lock(mutex_);
    std::vector<Transition> out;
    out.reserve(storage_.size());
    if (storage_.size() < capacity_) {
        out = storage_;
    } else {
        for (std::size_t i = 0; i < capacity_; ++i) out.push_back(storage_[(cursor_ + i) % capacity_]);
    }
    return out;
}

} // namespace dpg::ddpg

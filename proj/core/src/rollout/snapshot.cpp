#include "dpg/rollout/snapshot.hpp"

namespace dpg::rollout {

SnapshotStore::SnapshotStore(ace::EnsemblePolicy initial)
    : current_(std::make_shared<const PolicySnapshot>(PolicySnapshot{0, std::move(initial)})) {}

std::shared_ptr<const PolicySnapshot> SnapshotStore::publish(const ace::EnsemblePolicy& policy) {
    // Copy and validate outside the lock; the swap itself is the only shared write.
    for (const auto& a : policy.actors()) a.validate();
    for (const auto& c : policy.critics()) c.validate();
    std::lock_guard lock(mutex_);
    auto next = std::make_shared<const PolicySnapshot>(PolicySnapshot{current_->version + 1, policy});
    current_ = next;
    return next;
}

std::shared_ptr<const PolicySnapshot> SnapshotStore::current() const {
    std::lock_guard lock(mutex_);
    return current_;
}

std::uint64_t SnapshotStore::version() const {
    std::lock_guard lock(mutex_);
    return current_->version;
}

} // namespace dpg::rollout

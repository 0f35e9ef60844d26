#pragma once

#include <cstdint>
#include <memory>
#include <mutex>

#include "dpg/ace/ensemble_policy.hpp"

namespace dpg::rollout {

/// Immutable, versioned copy of the acting policy.
struct PolicySnapshot {
    std::uint64_t version = 0;
    ace::EnsemblePolicy policy;
};

/// Publication point between the trainer and rollout workers. Readers get a
/// shared_ptr to a complete snapshot, so a half-written update is never visible.
class SnapshotStore {
public:
    /// Version 0 is the initial snapshot.
    explicit SnapshotStore(ace::EnsemblePolicy initial);

    /// Copies `policy` (its networks must be finite) and makes it current.
    std::shared_ptr<const PolicySnapshot> publish(const ace::EnsemblePolicy& policy);
    std::shared_ptr<const PolicySnapshot> current() const;
    std::uint64_t version() const;

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const PolicySnapshot> current_;
};

} // namespace dpg::rollout

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dpg/ddpg/replay_buffer.hpp"
#include "dpg/envs/environment.hpp"
#include "dpg/rollout/collector.hpp"
#include "dpg/rollout/snapshot.hpp"

namespace dpg::rollout {

struct WorkerConfig {
    std::size_t worker_count = 1;
    /// One seed per worker, pairwise distinct.
    std::vector<std::uint64_t> seeds{0};
    /// Agent steps between snapshot refreshes.
    std::size_t snapshot_refresh_interval = 500;
    std::size_t frame_stack = 3;
    /// Per-worker exploration; a single entry is shared by all workers.
    std::vector<ExplorationConfig> exploration{ExplorationConfig{}};
    /// Run workers on their own threads; false runs them one after another on
    /// the calling thread (deterministic).
    bool threaded = true;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    const ExplorationConfig& exploration_for(std::size_t worker) const;
};

struct RolloutLimits {
    /// Episodes per worker; 0 means unbounded.
    std::size_t episodes_per_worker = 0;
    /// Agent steps per worker; 0 means unbounded.
    std::size_t steps_per_worker = 0;
    /// Polled between steps.
    const std::atomic<bool>* stop = nullptr;
};

struct WorkerFailure {
    std::uint32_t worker_id = 0;
    std::string message;
};

struct RolloutReport {
    std::vector<std::size_t> episodes_per_worker;
    std::vector<std::size_t> steps_per_worker;
    std::vector<WorkerFailure> failures;
};

using EnvFactory = std::function<std::unique_ptr<envs::Environment>(std::uint32_t worker_id)>;
/// Called once per finished episode; calls are serialized.
using EpisodeCallback = std::function<void(const EpisodeStats&)>;

/// Runs cfg.worker_count collectors against the snapshot store, appending
/// every transition to `buffer`. A worker that throws is reported in the
/// result and the others keep going.
RolloutReport run_workers(const WorkerConfig& cfg, const EnvFactory& env_factory,
                          const SnapshotStore& snapshots, ddpg::ReplayBuffer& buffer,
                          const RolloutLimits& limits, const EpisodeCallback& on_episode = {});

/// Delimited EpisodeStats stream: worker,episode,total_reward,steps,fell,timed_out
class EpisodeStatsWriter {
public:
    explicit EpisodeStatsWriter(std::ostream& out);
    void write(const EpisodeStats& stats);

private:
    std::ostream& out_;
};

} // namespace dpg::rollout

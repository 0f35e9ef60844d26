#include "dpg/rollout/workers.hpp"

#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "dpg/envs/trajectory.hpp"

namespace dpg::rollout {

void WorkerConfig::validate() const {
    if (worker_count < 1) throw std::invalid_argument("workers.worker_count: must be >= 1");
    if (seeds.size() != worker_count) {
        throw std::invalid_argument("workers.seeds: need exactly one seed per worker");
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw std::invalid_argument("workers.seeds: seeds must be pairwise distinct");
    }
    if (snapshot_refresh_interval < 1) {
        throw std::invalid_argument("workers.snapshot_refresh_interval: must be >= 1");
    }
    if (exploration.empty() || (exploration.size() != 1 && exploration.size() != worker_count)) {
        throw std::invalid_argument("workers.exploration: need one entry or one per worker");
    }
}

const ExplorationConfig& WorkerConfig::exploration_for(std::size_t worker) const {
    return exploration.size() == 1 ? exploration.front() : exploration.at(worker);
}

namespace {

struct WorkerResult {
    std::size_t episodes = 0;
    std::size_t steps = 0;
    std::optional<std::string> failure;
};

WorkerResult run_one(std::uint32_t id, const WorkerConfig& cfg, const EnvFactory& env_factory,
                     const SnapshotStore& snapshots, ddpg::ReplayBuffer& buffer,
                     const RolloutLimits& limits, const EpisodeCallback& on_episode,
                     std::mutex& callback_mutex) {
    WorkerResult result;
    try {
        Collector collector(id, env_factory(id), cfg.frame_stack, cfg.seeds[id], cfg.exploration_for(id));
        auto snapshot = snapshots.current();
        std::size_t since_refresh = 0;
        while (true) {
            if (limits.stop && limits.stop->load(std::memory_order_relaxed)) break;
            if (limits.episodes_per_worker && result.episodes >= limits.episodes_per_worker) break;
            if (limits.steps_per_worker && result.steps >= limits.steps_per_worker) break;
            if (since_refresh >= cfg.snapshot_refresh_interval) {
                snapshot = snapshots.current();
                since_refresh = 0;
            }
            auto step = collector.step(snapshot->policy);
            buffer.store(std::move(step.transition));
            ++result.steps;
            ++since_refresh;
            if (step.finished) {
                ++result.episodes;
                if (on_episode) {
                    std::lock_guard lock(callback_mutex);
                    on_episode(*step.finished);
                }
            }
        }
    } catch (const std::exception& e) {
        result.failure = e.what();
    } catch (...) {
        result.failure = "unknown exception";
    }
    return result;
}

} // namespace

RolloutReport run_workers(const WorkerConfig& cfg, const EnvFactory& env_factory,
                          const SnapshotStore& snapshots, ddpg::ReplayBuffer& buffer,
                          const RolloutLimits& limits, const EpisodeCallback& on_episode) {
    cfg.validate();
    if (!env_factory) throw std::invalid_argument("run_workers: missing environment factory");
    if (limits.episodes_per_worker == 0 && limits.steps_per_worker == 0 && limits.stop == nullptr) {
        throw std::invalid_argument("run_workers: no termination condition");
    }

    std::vector<WorkerResult> results(cfg.worker_count);
    std::mutex callback_mutex;
    if (cfg.threaded) {
        std::vector<std::jthread> threads;
        threads.reserve(cfg.worker_count);
        for (std::uint32_t id = 0; id < cfg.worker_count; ++id) {
            threads.emplace_back([&, id] {
                results[id] = run_one(id, cfg, env_factory, snapshots, buffer, limits, on_episode,
                                      callback_mutex);
            });
        }
    } else {
        for (std::uint32_t id = 0; id < cfg.worker_count; ++id) {
            results[id] = run_one(id, cfg, env_factory, snapshots, buffer, limits, on_episode, callback_mutex);
        }
    }

    RolloutReport report;
    for (std::uint32_t id = 0; id < cfg.worker_count; ++id) {
        report.episodes_per_worker.push_back(results[id].episodes);
        report.steps_per_worker.push_back(results[id].steps);
        if (results[id].failure) report.failures.push_back({id, *results[id].failure});
    }
    return report;
}

EpisodeStatsWriter::EpisodeStatsWriter(std::ostream& out) : out_(out) {
    out_ << "worker,episode,total_reward,steps,fell,timed_out\n";
}

void EpisodeStatsWriter::write(const EpisodeStats& stats) {
    out_ << stats.worker_id << ',' << stats.episode_index << ',';
    envs::write_real(out_, stats.total_reward);
    out_ << ',' << stats.steps << ',' << (stats.fell ? 1 : 0) << ',' << (stats.timed_out ? 1 : 0) << '\n';
}

} // namespace dpg::rollout

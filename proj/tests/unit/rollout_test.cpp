#include <gtest/gtest.h>

#include <atomic>
#include <sstream>
#include <thread>

#include "dpg/envs/factory.hpp"
#include "dpg/envs/obstacle_runner.hpp"
#include "dpg/rollout/collector.hpp"
#include "dpg/rollout/snapshot.hpp"
#include "dpg/rollout/workers.hpp"
#include "support/generators.hpp"

namespace dpg::rollout {
namespace {

using numerics::MlpParameters;

envs::EnvSpec small_runner() {
    envs::EnvSpec spec;
    spec.runner.episode_cap = 60;
    return spec;
}

ace::EnsemblePolicy random_policy(std::uint64_t seed, std::size_t n = 1) {
    std::mt19937_64 rng(seed);
    const auto spec = small_runner();
    const auto s = envs::agent_state_dim(spec);
    std::vector<MlpParameters> actors, critics;
    for (std::size_t i = 0; i < n; ++i) {
        actors.push_back(dpg::testing::random_actor(rng, s, 2));
        if (n > 1) critics.push_back(dpg::testing::random_critic(rng, s, 2));
    }
    return ace::EnsemblePolicy(actors, critics);
}

EnvFactory runner_factory() {
    return [](std::uint32_t) { return envs::make_environment(small_runner()); };
}

TEST(Workers, SingleWorkerMatchesSerialLoop) {
    const auto policy = random_policy(1);
    ExplorationConfig exploration;
    exploration.random_steps = 25;

    ddpg::ReplayBuffer serial(10000, 18, 2);
    Collector collector(0, envs::make_environment(small_runner()), 3, 99, exploration);
    for (int i = 0; i < 400; ++i) serial.store(collector.step(policy).transition);

    for (bool threaded : {false, true}) {
        WorkerConfig cfg;
        cfg.seeds = {99};
        cfg.exploration = {exploration};
        cfg.threaded = threaded;
        SnapshotStore store(policy);
        ddpg::ReplayBuffer parallel(10000, 18, 2);
        RolloutLimits limits;
        limits.steps_per_worker = 400;
        const auto report = run_workers(cfg, runner_factory(), store, parallel, limits);
        EXPECT_TRUE(report.failures.empty());
        EXPECT_EQ(parallel.contents(), serial.contents()) << "threaded=" << threaded;
    }
}

TEST(Workers, BufferCountEqualsEpisodeLengths) {
    WorkerConfig cfg;
    cfg.worker_count = 3;
    cfg.seeds = {1, 2, 3};
    SnapshotStore store(random_policy(2));
    ddpg::ReplayBuffer buffer(100000, 18, 2);
    RolloutLimits limits;
    limits.episodes_per_worker = 4;
    std::size_t total_steps = 0;
    std::vector<std::size_t> episodes(3, 0);
    const auto report = run_workers(cfg, runner_factory(), store, buffer, limits, [&](const EpisodeStats& s) {
        total_steps += s.steps;
        ++episodes[s.worker_id];
    });
    EXPECT_TRUE(report.failures.empty());
    EXPECT_EQ(buffer.size(), total_steps);
    EXPECT_EQ(episodes, (std::vector<std::size_t>{4, 4, 4}));
    std::vector<std::size_t> per_worker(3, 0);
    for (const auto& t : buffer.contents()) ++per_worker.at(t.worker_id);
    EXPECT_EQ(per_worker, report.steps_per_worker);
}

TEST(Workers, PerWorkerStreamsReproducible) {
    auto run = [] {
        WorkerConfig cfg;
        cfg.worker_count = 2;
        cfg.seeds = {5, 6};
        SnapshotStore store(random_policy(3));
        ddpg::ReplayBuffer buffer(100000, 18, 2);
        RolloutLimits limits;
        limits.steps_per_worker = 150;
        run_workers(cfg, runner_factory(), store, buffer, limits);
        std::vector<std::vector<ddpg::Transition>> streams(2);
        for (auto& t : buffer.contents()) streams[t.worker_id].push_back(t);
        return streams;
    };
    EXPECT_EQ(run(), run());
}

TEST(Workers, FailureIsReportedOthersContinue) {
    WorkerConfig cfg;
    cfg.worker_count = 2;
    cfg.seeds = {7, 8};
    SnapshotStore store(random_policy(4));
    ddpg::ReplayBuffer buffer(100000, 18, 2);
    RolloutLimits limits;
    limits.steps_per_worker = 100;
    const EnvFactory factory = [](std::uint32_t id) -> std::unique_ptr<envs::Environment> {
        if (id == 1) throw std::runtime_error("simulator crashed");
        return envs::make_environment(small_runner());
    };
    const auto report = run_workers(cfg, factory, store, buffer, limits);
    ASSERT_EQ(report.failures.size(), 1u);
    EXPECT_EQ(report.failures[0].worker_id, 1u);
    EXPECT_EQ(report.failures[0].message, "simulator crashed");
    EXPECT_EQ(report.steps_per_worker[0], 100u);
    EXPECT_EQ(buffer.size(), 100u);
}

TEST(Workers, ConfigValidation) {
    WorkerConfig cfg;
    cfg.worker_count = 2;
    cfg.seeds = {1, 1};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.seeds = {1, 2};
    cfg.snapshot_refresh_interval = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.snapshot_refresh_interval = 10;
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Collector, TimeoutIsNotTerminalForBootstrapping) {
    envs::EnvSpec spec = small_runner();
    spec.runner.episode_cap = 8;
    spec.runner.obstacle_density = 0.0;
    Collector collector(0, envs::make_environment(spec), 3, 1, ExplorationConfig{.explore = false});
    const auto policy = random_policy(5);
    Collector::Step step;
    do {
        step = collector.step(policy);
    } while (!step.finished);
    EXPECT_TRUE(step.finished->timed_out);
    EXPECT_FALSE(step.finished->fell);
    EXPECT_FALSE(step.transition.terminal);
    EXPECT_EQ(step.finished->steps, 2u);
}

TEST(Collector, FallIsTerminal) {
    envs::EnvSpec spec = small_runner();
    spec.runner.episode_cap = 1000;
    MlpParameters sprint;
    sprint.output = numerics::Activation::Tanh;
    numerics::DenseLayer layer(18, 2);
    layer.bias = {10.0, -10.0};
    sprint.layers.push_back(layer);
    Collector collector(0, envs::make_environment(spec), 3, 2, ExplorationConfig{.explore = false});
    const ace::EnsemblePolicy policy({sprint}, {});
    Collector::Step step;
    do {
        step = collector.step(policy);
    } while (!step.finished);
    EXPECT_TRUE(step.finished->fell);
    EXPECT_TRUE(step.transition.terminal);
}

TEST(Collector, RecordsCriticScores) {
    Collector collector(0, envs::make_environment(small_runner()), 3, 3, ExplorationConfig{.explore = false});
    const auto policy = random_policy(6, 3);
    const auto step = collector.step(policy);
    ASSERT_TRUE(step.trace);
    EXPECT_EQ(step.trace->scores.size(), 3u);
}

TEST(Snapshot, PublishIsVisibleBitExact) {
    SnapshotStore store(random_policy(7));
    EXPECT_EQ(store.version(), 0u);
    const auto next = random_policy(8);
    store.publish(next);
    EXPECT_EQ(store.version(), 1u);
    EXPECT_EQ(store.current()->policy.actors(), next.actors());
}

TEST(Snapshot, RejectsNonFinite) {
    SnapshotStore store(random_policy(9));
    auto actors = random_policy(10).actors();
    actors[0].layers[0].bias[0] = std::nan("");
    EXPECT_THROW(store.publish(ace::EnsemblePolicy(actors, {})), std::invalid_argument);
    EXPECT_EQ(store.version(), 0u);
}

ace::EnsemblePolicy uniform_policy(double value) {
    auto actors = random_policy(11).actors();
    actors[0].for_each_value([&](double& v) { v = value; });
    return ace::EnsemblePolicy(actors, {});
}

TEST(Snapshot, ReadersNeverSeeTornUpdates) {
    SnapshotStore store(uniform_policy(0.0));
    std::atomic<bool> done{false};
    std::atomic<int> torn{0};
    std::vector<std::jthread> readers;
    for (int r = 0; r < 3; ++r) {
        readers.emplace_back([&] {
            while (!done.load()) {
                const auto snap = store.current();
                const double expected = static_cast<double>(snap->version);
                snap->policy.actors()[0].for_each_value([&](double v) {
                    if (v != expected) ++torn;
                });
            }
        });
    }
    for (int v = 1; v <= 200; ++v) store.publish(uniform_policy(v));
    done = true;
    readers.clear();
    EXPECT_EQ(torn.load(), 0);
    EXPECT_EQ(store.version(), 200u);
}

TEST(EpisodeStats, Layout) {
    std::ostringstream out;
    EpisodeStatsWriter writer(out);
    EpisodeStats s;
    s.worker_id = 2;
    s.episode_index = 5;
    s.total_reward = 3.5;
    s.steps = 12;
    s.fell = true;
    writer.write(s);
    EXPECT_EQ(out.str(), "worker,episode,total_reward,steps,fell,timed_out\n2,5,3.5,12,1,0\n");
}

} // namespace
} // namespace dpg::rollout

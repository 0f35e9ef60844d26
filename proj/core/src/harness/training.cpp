#include "dpg/harness/training.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "dpg/ace/ensemble_trainer.hpp"
#include "dpg/ddpg/agent.hpp"
#include "dpg/envs/trajectory.hpp"
#include "dpg/numerics/checkpoint.hpp"
#include "dpg/rollout/collector.hpp"
#include "dpg/rollout/workers.hpp"
#include "dpg/seeding.hpp"

namespace dpg::harness {

namespace fs = std::filesystem;

namespace {

/// Common surface of the single-pair and joint learners.
class Learner {
public:
    virtual ~Learner() = default;
    virtual ace::EnsemblePolicy policy() const = 0;
    /// False when the buffer is still too small.
    virtual bool train(const ddpg::ReplayBuffer& buffer, std::mt19937_64& rng) = 0;
};

class PairLearner final : public Learner {
public:
    explicit PairLearner(ddpg::DdpgAgent agent) : agent_(std::move(agent)) {}
    ace::EnsemblePolicy policy() const override { return ace::EnsemblePolicy({agent_.actor()}, {}); }
    bool train(const ddpg::ReplayBuffer& buffer, std::mt19937_64& rng) override {
        return agent_.train_step(buffer, rng).has_value();
    }
    const ddpg::DdpgAgent& agent() const { return agent_; }

private:
    ddpg::DdpgAgent agent_;
};

class JointLearner final : public Learner {
public:
    explicit JointLearner(ace::EnsembleTrainer trainer) : trainer_(std::move(trainer)) {}
    ace::EnsemblePolicy policy() const override { return trainer_.policy(); }
    bool train(const ddpg::ReplayBuffer& buffer, std::mt19937_64& rng) override {
        return trainer_.train_step(buffer, rng).has_value();
    }
    const ace::EnsembleTrainer& trainer() const { return trainer_; }

private:
    ace::EnsembleTrainer trainer_;
};

struct LoopSettings {
    std::uint64_t seed = 0;
    double ou_sigma = 0.2;
    int checkpoint_member = 0;
};

/// Serial loop: one environment step then one train step (after warmup).
std::vector<ddpg::EpisodeRecord> run_serial(const ExperimentConfig& cfg, Learner& learner,
                                            const LoopSettings& settings, const CheckpointFn& on_checkpoint) {
    const auto& hp = cfg.ddpg;
    rollout::ExplorationConfig exploration{hp.ou_theta, settings.ou_sigma, hp.ou_dt, hp.warmup_steps, true};
    rollout::Collector collector(0, envs::make_environment(cfg.env), cfg.env.frame_stack,
                                 derive_seed(settings.seed, "rollout"), exploration);
    ddpg::ReplayBuffer buffer(hp.buffer_capacity, collector.state_dim(), collector.action_dim());
    std::mt19937_64 sampling(derive_seed(settings.seed, "sampling"));

    std::vector<ddpg::EpisodeRecord> curve;
    auto policy = learner.policy();
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t step = 0; step < cfg.total_steps; ++step) {
        auto out = collector.step(policy);
        buffer.store(std::move(out.transition));
        bool trained = false;
        if (step + 1 >= hp.warmup_steps) trained = learner.train(buffer, sampling);
        if (trained) policy = learner.policy();
        if (out.finished) {
            const auto& f = *out.finished;
            curve.push_back({f.episode_index, f.total_reward, f.steps, step + 1, f.fell,
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
        }
        if (on_checkpoint && cfg.checkpoint_interval > 0 && (step + 1) % cfg.checkpoint_interval == 0) {
            on_checkpoint(settings.checkpoint_member, step + 1, policy);
        }
    }
    return curve;
}

/// Asynchronous loop: rollout workers on their own threads, the trainer on the
/// calling thread, paced to one train step per collected transition after warmup.
std::vector<ddpg::EpisodeRecord> run_parallel(const ExperimentConfig& cfg, Learner& learner,
                                              const LoopSettings& settings, const CheckpointFn& on_checkpoint) {
    const auto& hp = cfg.ddpg;
    const std::size_t workers = cfg.workers.count;
    rollout::WorkerConfig wc;
    wc.worker_count = workers;
    wc.seeds.clear();
    for (std::size_t w = 0; w < workers; ++w) wc.seeds.push_back(derive_seed(settings.seed, "worker-" + std::to_string(w)));
    wc.snapshot_refresh_interval = cfg.workers.snapshot_refresh_interval;
    wc.frame_stack = cfg.env.frame_stack;
    wc.exploration = {rollout::ExplorationConfig{hp.ou_theta, settings.ou_sigma, hp.ou_dt,
                                                 (hp.warmup_steps + workers - 1) / workers, true}};
    wc.threaded = true;

    auto initial = learner.policy();
    ddpg::ReplayBuffer buffer(hp.buffer_capacity, initial.state_dim(), initial.action_dim());
    rollout::SnapshotStore store(initial);
    std::mt19937_64 sampling(derive_seed(settings.seed, "sampling"));

    std::vector<ddpg::EpisodeRecord> curve;
    std::mutex curve_mutex;
    const auto start = std::chrono::steady_clock::now();
    std::size_t episodes = 0;
    auto on_episode = [&](const rollout::EpisodeStats& f) {
        std::lock_guard lock(curve_mutex);
        curve.push_back({episodes++, f.total_reward, f.steps, buffer.total_stored(), f.fell,
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    };

    std::atomic<bool> stop{false};
    rollout::RolloutLimits limits;
    limits.steps_per_worker = (cfg.total_steps + workers - 1) / workers;
    limits.stop = &stop;
    rollout::RolloutReport report;
    std::jthread rollout_thread([&] { report = rollout::run_workers(wc, [&](std::uint32_t) { return envs::make_environment(cfg.env); },
                                                                     store, buffer, limits, on_episode); });

    std::size_t train_steps = 0;
    std::size_t next_checkpoint = cfg.checkpoint_interval;
    const std::size_t publish_every = std::max<std::size_t>(1, cfg.workers.snapshot_refresh_interval / 10);
    while (true) {
        const std::size_t collected = buffer.total_stored();
        const bool collecting_done = collected >= limits.steps_per_worker * workers;
        const std::size_t allowed = collected + 1 > hp.warmup_steps ? collected + 1 - hp.warmup_steps : 0;
        if (train_steps < std::min(allowed, cfg.total_steps) && learner.train(buffer, sampling)) {
            ++train_steps;
            if (train_steps % publish_every == 0) store.publish(learner.policy());
        } else if (collecting_done) {
            break;
        } else {
            std::this_thread::sleep_for(std::chrono::microseconds(50));
        }
        if (on_checkpoint && next_checkpoint > 0 && collected >= next_checkpoint) {
            on_checkpoint(settings.checkpoint_member, next_checkpoint, learner.policy());
            next_checkpoint += cfg.checkpoint_interval;
        }
    }
    stop = true;
    rollout_thread.join();
    if (!report.failures.empty()) {
        throw std::runtime_error("rollout worker " + std::to_string(report.failures.front().worker_id) +
                                 " failed: " + report.failures.front().message);
    }
    return curve;
}

std::vector<ddpg::EpisodeRecord> run_loop(const ExperimentConfig& cfg, Learner& learner,
                                          const LoopSettings& settings, const CheckpointFn& on_checkpoint) {
    return cfg.workers.count > 1 ? run_parallel(cfg, learner, settings, on_checkpoint)
                                 : run_serial(cfg, learner, settings, on_checkpoint);
}

void write_curve(const fs::path& path, const std::vector<ddpg::EpisodeRecord>& curve, bool wall_time) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    ddpg::LearningCurveWriter writer(out, wall_time);
    for (const auto& record : curve) writer.write(record);
}

} // namespace

TrainOutcome train_member(const ExperimentConfig& cfg, std::size_t index, const CheckpointFn& on_checkpoint) {
    cfg.validate();
    const auto members = cfg.resolved_members();
    if (index >= members.size()) throw std::out_of_range("train_member: member index out of range");
    const auto& member = members[index];
    const auto state_dim = envs::agent_state_dim(cfg.env);
    const auto action_dim = envs::agent_action_dim(cfg.env);

    PairLearner learner(ddpg::DdpgAgent(state_dim, action_dim, member.network, cfg.ddpg,
                                        derive_seed(member.seed, "init")));
    LoopSettings settings{member.seed, member.ou_sigma, static_cast<int>(index)};
    TrainOutcome outcome;
    outcome.curves.push_back(run_loop(cfg, learner, settings, on_checkpoint));
    outcome.actors.push_back(learner.agent().actor());
    outcome.critics.push_back(learner.agent().critic());
    return outcome;
}

TrainOutcome train_experiment(const ExperimentConfig& cfg, const CheckpointFn& on_checkpoint) {
    cfg.validate();
    if (cfg.ensemble.training == EnsembleTraining::Independent) {
        const std::size_t n = cfg.ensemble.actors;
        std::vector<TrainOutcome> parts(n);
        const std::size_t lanes = std::max(1u, std::thread::hardware_concurrency());
        if (lanes > 1 && n > 1 && cfg.workers.count == 1) {
            // Members are independent and individually seeded, so running them
            // concurrently does not change any result.
            std::atomic<std::size_t> next{0};
            std::vector<std::exception_ptr> errors(n);
            std::mutex checkpoint_mutex;
            CheckpointFn guarded;
            if (on_checkpoint) {
                guarded = [&](int m, std::size_t s, const ace::EnsemblePolicy& p) {
                    std::lock_guard lock(checkpoint_mutex);
                    on_checkpoint(m, s, p);
                };
            }
            {
                std::vector<std::jthread> pool;
                for (std::size_t lane = 0; lane < std::min(lanes, n); ++lane) {
                    pool.emplace_back([&] {
                        for (std::size_t i = next++; i < n; i = next++) {
                            try {
                                parts[i] = train_member(cfg, i, guarded);
                            } catch (...) {
                                errors[i] = std::current_exception();
                            }
                        }
                    });
                }
            }
            for (auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) parts[i] = train_member(cfg, i, on_checkpoint);
        }
        TrainOutcome outcome;
        for (auto& part : parts) {
            outcome.actors.push_back(std::move(part.actors.front()));
            outcome.critics.push_back(std::move(part.critics.front()));
            outcome.curves.push_back(std::move(part.curves.front()));
        }
        return outcome;
    }

    const auto members = cfg.resolved_members();
    const auto state_dim = envs::agent_state_dim(cfg.env);
    const auto action_dim = envs::agent_action_dim(cfg.env);
    const std::size_t critic_count = std::max<std::size_t>(1, cfg.ensemble.critics);
    std::vector<numerics::MlpParameters> actors;
    std::vector<numerics::MlpParameters> critics;
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::mt19937_64 rng(derive_seed(derive_seed(members[i].seed, "init"), "actor-init"));
        actors.push_back(numerics::make_mlp(
            numerics::actor_shape(state_dim, action_dim, members[i].network.actor_widths, members[i].network.activation), rng));
    }
    for (std::size_t m = 0; m < critic_count; ++m) {
        std::mt19937_64 rng(derive_seed(derive_seed(members[m].seed, "init"), "critic-init"));
        critics.push_back(numerics::make_mlp(
            numerics::critic_shape(state_dim, action_dim, members[m].network.critic_widths, members[m].network.activation), rng));
    }
    JointLearner learner(ace::EnsembleTrainer(std::move(actors), std::move(critics), cfg.ddpg));
    LoopSettings settings{cfg.seed, cfg.ddpg.ou_sigma, -1};
    TrainOutcome outcome;
    outcome.curves.push_back(run_loop(cfg, learner, settings, on_checkpoint));
    outcome.actors = learner.trainer().actors();
    outcome.critics = learner.trainer().critics();
    return outcome;
}

fs::path actor_checkpoint_path(const fs::path& dir, std::size_t i) {
    return dir / ("actor_" + std::to_string(i) + ".ckpt");
}

fs::path critic_checkpoint_path(const fs::path& dir, std::size_t i) {
    return dir / ("critic_" + std::to_string(i) + ".ckpt");
}

fs::path make_run_dir(const fs::path& output_dir, const std::string& label) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    localtime_r(&now, &tm);
    std::ostringstream name;
    name << std::put_time(&tm, "%Y%m%d-%H%M%S") << '_' << label;
    auto dir = output_dir / name.str();
    fs::create_directories(dir);
    return dir;
}

RunArtifacts cmd_train(const ExperimentConfig& cfg, const fs::path& run_dir) {
    cfg.validate();
    fs::create_directories(run_dir);
    {
        std::ofstream echo(run_dir / "config.json", std::ios::trunc);
        echo << config_to_json(cfg);
    }

    auto on_checkpoint = [&](int member, std::size_t step, const ace::EnsemblePolicy& policy) {
        const auto dir = run_dir / "checkpoints" / ("step_" + std::to_string(step));
        fs::create_directories(dir);
        const std::size_t offset = member < 0 ? 0 : static_cast<std::size_t>(member);
        for (std::size_t i = 0; i < policy.actor_count(); ++i) {
            numerics::checkpoint_save(policy.actors()[i], actor_checkpoint_path(dir, offset + i));
        }
    };
    const auto outcome = train_experiment(cfg, on_checkpoint);

    RunArtifacts artifacts;
    artifacts.run_dir = run_dir;
    for (std::size_t i = 0; i < outcome.actors.size(); ++i) {
        artifacts.actor_checkpoints.push_back(actor_checkpoint_path(run_dir, i));
        numerics::checkpoint_save(outcome.actors[i], artifacts.actor_checkpoints.back());
    }
    for (std::size_t i = 0; i < outcome.critics.size(); ++i) {
        artifacts.critic_checkpoints.push_back(critic_checkpoint_path(run_dir, i));
        numerics::checkpoint_save(outcome.critics[i], artifacts.critic_checkpoints.back());
    }

    std::ofstream timing(run_dir / "timing.csv", std::ios::trunc);
    timing << "curve,episode,wall_time\n";
    for (std::size_t c = 0; c < outcome.curves.size(); ++c) {
        const auto name = outcome.curves.size() == 1 ? std::string("learning_curve.csv")
                                                     : "learning_curve_member" + std::to_string(c) + ".csv";
        artifacts.learning_curves.push_back(run_dir / name);
        write_curve(artifacts.learning_curves.back(), outcome.curves[c], false);
        for (const auto& r : outcome.curves[c]) {
            timing << c << ',' << r.episode << ',';
            envs::write_real(timing, r.wall_time);
            timing << '\n';
        }
    }
    return artifacts;
}

} // namespace dpg::harness

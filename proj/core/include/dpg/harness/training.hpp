#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/ddpg/learning_curve.hpp"
#include "dpg/harness/config.hpp"
#include "dpg/numerics/mlp.hpp"

namespace dpg::harness {

/// Networks and learning curve produced by one training run.
struct TrainOutcome {
    std::vector<numerics::MlpParameters> actors;
    std::vector<numerics::MlpParameters> critics;
    /// One curve per independently trained member, or a single curve for joint training.
    std::vector<std::vector<ddpg::EpisodeRecord>> curves;
};

/// Called every checkpoint_interval agent steps with (member or -1 for joint, step, policy).
using CheckpointFn = std::function<void(int member, std::size_t step, const ace::EnsemblePolicy&)>;

/// Trains member `index` of `config` as a plain DDPG actor-critic pair.
/// Single-worker training is serial and bit-reproducible.
TrainOutcome train_member(const ExperimentConfig& config, std::size_t index,
                          const CheckpointFn& on_checkpoint = {});

/// Trains the whole ensemble (independent pairs or joint) in memory.
TrainOutcome train_experiment(const ExperimentConfig& config, const CheckpointFn& on_checkpoint = {});

/// Files written by cmd_train.
struct RunArtifacts {
    std::filesystem::path run_dir;
    std::vector<std::filesystem::path> actor_checkpoints;
    std::vector<std::filesystem::path> critic_checkpoints;
    std::vector<std::filesystem::path> learning_curves;
};

/// Trains per `config` into `run_dir`: config.json (resolved echo), actor_<i>.ckpt,
/// critic_<i>.ckpt, learning_curve[_member<i>].csv, timing.csv and, when
/// checkpoint_interval > 0, checkpoints/step_<k>/.
RunArtifacts cmd_train(const ExperimentConfig& config, const std::filesystem::path& run_dir);

/// <output_dir>/<YYYYmmdd-HHMMSS>_<label>, created if missing.
std::filesystem::path make_run_dir(const std::filesystem::path& output_dir, const std::string& label);

std::filesystem::path actor_checkpoint_path(const std::filesystem::path& dir, std::size_t i);
std::filesystem::path critic_checkpoint_path(const std::filesystem::path& dir, std::size_t i);

} // namespace dpg::harness

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/envs/factory.hpp"
#include "dpg/envs/trajectory.hpp"
#include "dpg/harness/config.hpp"

namespace dpg::harness {

struct EpisodeOutcome {
    double reward = 0.0;
    std::size_t steps = 0;
    bool fell = false;
};

/// One evaluation row in the layout
/// label,tests,actors,critics,average_reward,max_reward,fall_off
/// plus the raw per-episode rewards.
struct EvaluationReport {
    std::string label;
    std::size_t actors = 0;
    std::size_t critics = 0;
    std::vector<EpisodeOutcome> episodes;
    double average_reward = 0.0;
    double max_reward = 0.0;
    std::size_t fall_count = 0;
    double fall_reward_threshold = 0.0;
};

/// Runs `episodes` noise-free episodes with select_action. Episode k uses the
/// environment seed derive_seed(seed, k), so every policy evaluated with the
/// same seed faces the same episodes. Optionally dumps every step.
std::vector<EpisodeOutcome> run_evaluation_episodes(const ace::EnsemblePolicy& policy,
                                                    const envs::EnvSpec& env, std::size_t episodes,
                                                    std::uint64_t seed,
                                                    envs::TrajectoryWriter* dump = nullptr);

/// Aggregates outcomes: an episode is a fall if it fell or scored below the threshold.
EvaluationReport make_report(const std::string& label, std::size_t actors, std::size_t critics,
                             std::vector<EpisodeOutcome> episodes, double fall_reward_threshold);

/// Seed used for evaluation episodes of a config.
std::uint64_t evaluation_seed(const ExperimentConfig& config);

/// fall_fraction x best episode reward of the single-actor passthrough policy
/// built from `first_actor`.
double auto_fall_threshold(const numerics::MlpParameters& first_actor, const ExperimentConfig& config,
                           std::size_t episodes);

struct EvaluateOptions {
    std::optional<double> fall_reward_threshold;
    std::optional<std::filesystem::path> trajectory_dump;
};

/// Loads the listed checkpoints, checks that `label` equals A<actors>C<critics>
/// and that every member agrees on dims, then evaluates. Never writes to the
/// checkpoint files. Throws std::invalid_argument on label or dim mismatch.
EvaluationReport cmd_evaluate(const ExperimentConfig& config,
                              const std::vector<std::filesystem::path>& actor_checkpoints,
                              const std::vector<std::filesystem::path>& critic_checkpoints,
                              const std::string& label, std::size_t episodes,
                              const EvaluateOptions& options = {});

/// The first X actor and Y critic checkpoints of a training run directory for "AXCY".
std::pair<std::vector<std::filesystem::path>, std::vector<std::filesystem::path>>
checkpoints_for_label(const std::filesystem::path& run_dir, const std::string& label);

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const EvaluationReport& report);
/// episode,reward,steps,fell
void write_rewards(std::ostream& out, const EvaluationReport& report);

} // namespace dpg::harness

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpg/ddpg/hyperparameters.hpp"
#include "dpg/envs/factory.hpp"

namespace dpg::harness {

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Per-member overrides for heterogeneous ensembles.
struct MemberSpec {
    std::uint64_t seed = 0;
    ddpg::NetworkSpec network;
    double ou_sigma = 0.2;
};

enum class EnsembleTraining {
    /// N actor-critic pairs trained separately with plain DDPG.
    Independent,
    /// N actors and M critics trained together on the ensemble Bellman target.
    Joint
};

struct EnsembleSpec {
    std::size_t actors = 1;
    /// Critics used at evaluation (0, 1 or N). Joint training trains this many
    /// (at least 1); independent training always trains one critic per actor.
    std::size_t critics = 0;
    EnsembleTraining training = EnsembleTraining::Independent;
    /// Vary widths and noise scales across members when no explicit members are given.
    bool heterogeneous = true;
    /// Explicit per-member overrides; empty means derive from the base settings.
    std::vector<MemberSpec> members;
};

struct WorkersSpec {
    std::size_t count = 1;
    std::size_t snapshot_refresh_interval = 500;
};

struct EvaluationSpec {
    std::size_t episodes = 100;
    /// Episodes scoring below this count as falls. Unset: fall_fraction times
    /// the best A1C0 episode reward on the same evaluation episodes.
    std::optional<double> fall_reward_threshold;
    double fall_fraction = 0.3;
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::string label = "run";
    envs::EnvSpec env;
    ddpg::NetworkSpec network;
    ddpg::DdpgHyperparameters ddpg;
    EnsembleSpec ensemble;
    WorkersSpec workers;
    /// Agent steps per trained member (independent) or in total (joint).
    std::size_t total_steps = 20000;
    /// Write intermediate checkpoints every this many agent steps; 0 disables.
    std::size_t checkpoint_interval = 0;
    EvaluationSpec evaluation;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Resolved member list: explicit members, or members derived from the
    /// base network/noise and the config seed.
    std::vector<MemberSpec> resolved_members() const;
};

/// Parses JSON text; every field is optional and unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Fully resolved JSON (all defaults spelled out).
std::string config_to_json(const ExperimentConfig& config);

} // namespace dpg::harness

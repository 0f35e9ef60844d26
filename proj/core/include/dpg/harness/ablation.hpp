#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dpg/harness/config.hpp"
#include "dpg/harness/evaluation.hpp"
#include "dpg/numerics/activation.hpp"

namespace dpg::harness {

/// One arm of a controlled comparison.
struct AblationArm {
    std::string name;
    std::filesystem::path run_dir;
    /// Episode rewards of the first trained member, in episode order.
    std::vector<double> curve;
    /// Evaluation of the trained ensemble (label from the config).
    EvaluationReport evaluation;
};

struct AblationResult {
    std::vector<AblationArm> arms;
};

/// Trains one run per activation kind, identical otherwise (same seed, same
/// members, same budget), evaluates each, and writes
/// <run_dir>/<kind>/ (a full cmd_train run directory),
/// <run_dir>/ablation_curves.csv (episode-aligned rewards side by side) and
/// <run_dir>/ablation_summary.csv. Throws std::invalid_argument if `kinds` is empty.
AblationResult cmd_ablate_activation(const ExperimentConfig& config,
                                     const std::vector<numerics::Activation>& kinds,
                                     const std::filesystem::path& run_dir);

/// Same layout, one arm per rollout worker count.
AblationResult cmd_ablate_workers(const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                  const std::filesystem::path& run_dir);

/// Copy of `config` with every network (base and explicit members) switched to `kind`.
ExperimentConfig with_activation(ExperimentConfig config, numerics::Activation kind);

} // namespace dpg::harness

#include "dpg/harness/ablation.hpp"

#include <fstream>
#include <stdexcept>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/harness/training.hpp"

namespace dpg::harness {

namespace fs = std::filesystem;

namespace {

AblationArm run_arm(const std::string& name, const ExperimentConfig& cfg, const fs::path& dir) {
    AblationArm arm;
    arm.name = name;
    arm.run_dir = dir;
    const auto artifacts = cmd_train(cfg, dir);

    std::ifstream curve(artifacts.learning_curves.front());
    std::string line;
    std::getline(curve, line);
    while (std::getline(curve, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        arm.curve.push_back(std::stod(line.substr(first + 1, second - first - 1)));
    }

    const std::string label = "A" + std::to_string(cfg.ensemble.actors) + "C" + std::to_string(cfg.ensemble.critics);
    const auto [actors, critics] = checkpoints_for_label(dir, label);
    arm.evaluation = cmd_evaluate(cfg, actors, critics, label, cfg.evaluation.episodes);
    return arm;
}

void write_outputs(const AblationResult& result, const fs::path& run_dir) {
    std::ofstream curves(run_dir / "ablation_curves.csv", std::ios::trunc);
    curves << "episode";
    std::size_t longest = 0;
    for (const auto& arm : result.arms) {
        curves << ',' << arm.name;
        longest = std::max(longest, arm.curve.size());
    }
    curves << '\n';
    for (std::size_t e = 0; e < longest; ++e) {
        curves << e;
        for (const auto& arm : result.arms) {
            curves << ',';
            if (e < arm.curve.size()) envs::write_real(curves, arm.curve[e]);
        }
        curves << '\n';
    }

    std::ofstream summary(run_dir / "ablation_summary.csv", std::ios::trunc);
    summary << "arm,episodes_trained,final_average_reward,final_max_reward,fall_off\n";
    for (const auto& arm : result.arms) {
        summary << arm.name << ',' << arm.curve.size() << ',';
        envs::write_real(summary, arm.evaluation.average_reward);
        summary << ',';
        envs::write_real(summary, arm.evaluation.max_reward);
        summary << ',' << arm.evaluation.fall_count << '\n';
    }
}

} // namespace

ExperimentConfig with_activation(ExperimentConfig config, numerics::Activation kind) {
    config.network.activation = kind;
    for (auto& member : config.ensemble.members) member.network.activation = kind;
    return config;
}

AblationResult cmd_ablate_activation(const ExperimentConfig& config, const std::vector<numerics::Activation>& kinds,
                                     const fs::path& run_dir) {
    if (kinds.empty()) throw std::invalid_argument("ablate-activation: no activation kinds given");
    config.validate();
    fs::create_directories(run_dir);
    AblationResult result;
    for (auto kind : kinds) {
        const std::string name(numerics::to_string(kind));
        result.arms.push_back(run_arm(name, with_activation(config, kind), run_dir / name));
    }
    write_outputs(result, run_dir);
    return result;
}

AblationResult cmd_ablate_workers(const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                  const fs::path& run_dir) {
    if (counts.empty()) throw std::invalid_argument("ablate-workers: no worker counts given");
    config.validate();
    fs::create_directories(run_dir);
    AblationResult result;
    for (auto count : counts) {
        auto cfg = config;
        cfg.workers.count = count;
        cfg.validate();
        const std::string name = "workers_" + std::to_string(count);
        result.arms.push_back(run_arm(name, cfg, run_dir / name));
    }
    write_outputs(result, run_dir);
    return result;
}

} // namespace dpg::harness

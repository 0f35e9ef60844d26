// dpg: train, evaluate and ablate DDPG / actor-critic-ensemble agents.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpg/harness/ablation.hpp"
#include "dpg/harness/config.hpp"
#include "dpg/harness/evaluation.hpp"
#include "dpg/harness/training.hpp"

namespace fs = std::filesystem;
using namespace dpg;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string output_dir = "runs";
    std::string run_dir;
};

harness::ExperimentConfig resolve_config(const CommonOptions& opts) {
    auto cfg = opts.config_path.empty() ? harness::ExperimentConfig{} : harness::load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    cfg.validate();
    return cfg;
}

fs::path resolve_run_dir(const CommonOptions& opts, const std::string& label) {
    if (!opts.run_dir.empty()) {
        fs::create_directories(opts.run_dir);
        return opts.run_dir;
    }
    return harness::make_run_dir(opts.output_dir, label);
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.config_path, "Experiment config (JSON); defaults apply when omitted");
    cmd->add_option("-s,--seed", opts.seed, "Override the config seed");
    cmd->add_option("-o,--output-dir", opts.output_dir, "Parent directory for timestamped run directories");
    cmd->add_option("--run-dir", opts.run_dir, "Exact run directory (overrides --output-dir naming)");
}

void print_arms(const harness::AblationResult& result) {
    harness::write_report_header(std::cout);
    for (const auto& arm : result.arms) {
        auto report = arm.evaluation;
        report.label = arm.name + ":" + report.label;
        harness::write_report_row(std::cout, report);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic policy gradient toolkit with actor-critic ensembles"};
    app.require_subcommand(1);

    CommonOptions train_opts;
    auto* train = app.add_subcommand("train", "Train DDPG pairs or a joint ensemble");
    add_common(train, train_opts);

    CommonOptions eval_opts;
    std::string label = "A1C0";
    std::optional<std::size_t> episodes;
    std::optional<double> fall_threshold;
    std::string checkpoints_dir;
    std::vector<std::string> actor_paths;
    std::vector<std::string> critic_paths;
    std::string trajectory_path;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate an AXCY ensemble from checkpoints");
    add_common(evaluate, eval_opts);
    evaluate->add_option("-l,--label", label, "Ensemble label A<actors>C<critics>")->required();
    evaluate->add_option("--checkpoints", checkpoints_dir, "Training run directory holding actor_<i>/critic_<i> checkpoints");
    evaluate->add_option("--actor", actor_paths, "Explicit actor checkpoint (repeatable)");
    evaluate->add_option("--critic", critic_paths, "Explicit critic checkpoint (repeatable)");
    evaluate->add_option("-n,--episodes", episodes, "Evaluation episodes (default: config evaluation.episodes)");
    evaluate->add_option("--fall-threshold", fall_threshold, "Reward below which an episode counts as a fall");
    evaluate->add_option("--trajectory", trajectory_path, "Write a per-step trajectory dump with critic scores");

    CommonOptions act_opts;
    std::vector<std::string> kinds{"selu", "relu"};
    auto* ablate_act = app.add_subcommand("ablate-activation", "Controlled comparison of hidden activations");
    add_common(ablate_act, act_opts);
    ablate_act->add_option("-k,--kinds", kinds, "Activation kinds")->delimiter(',');

    CommonOptions workers_opts;
    std::vector<std::size_t> counts{1, 3};
    auto* ablate_workers = app.add_subcommand("ablate-workers", "Controlled comparison of rollout worker counts");
    add_common(ablate_workers, workers_opts);
    ablate_workers->add_option("-w,--counts", counts, "Worker counts")->delimiter(',');

    auto* show_config = app.add_subcommand("show-config", "Print the resolved config");
    CommonOptions show_opts;
    add_common(show_config, show_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) {
            const auto cfg = resolve_config(train_opts);
            const auto dir = resolve_run_dir(train_opts, cfg.label);
            const auto artifacts = harness::cmd_train(cfg, dir);
            std::cout << "run directory: " << artifacts.run_dir.string() << '\n';
            for (const auto& p : artifacts.learning_curves) std::cout << "learning curve: " << p.string() << '\n';
        } else if (*evaluate) {
            const auto cfg = resolve_config(eval_opts);
            std::vector<fs::path> actors(actor_paths.begin(), actor_paths.end());
            std::vector<fs::path> critics(critic_paths.begin(), critic_paths.end());
            if (!checkpoints_dir.empty()) {
                if (!actors.empty() || !critics.empty()) {
                    throw std::invalid_argument("--checkpoints cannot be combined with --actor/--critic");
                }
                std::tie(actors, critics) = harness::checkpoints_for_label(checkpoints_dir, label);
            }
            harness::EvaluateOptions options;
            options.fall_reward_threshold = fall_threshold;
            if (!trajectory_path.empty()) options.trajectory_dump = fs::path(trajectory_path);
            const auto report = harness::cmd_evaluate(cfg, actors, critics, label,
                                                      episodes.value_or(cfg.evaluation.episodes), options);
            const auto dir = resolve_run_dir(eval_opts, "evaluate_" + label);
            std::ofstream row(dir / ("evaluation_" + label + ".csv"), std::ios::trunc);
            harness::write_report_header(row);
            harness::write_report_row(row, report);
            std::ofstream rewards(dir / ("rewards_" + label + ".csv"), std::ios::trunc);
            harness::write_rewards(rewards, report);
            harness::write_report_header(std::cout);
            harness::write_report_row(std::cout, report);
        } else if (*ablate_act) {
            const auto cfg = resolve_config(act_opts);
            std::vector<numerics::Activation> parsed;
            for (const auto& k : kinds) parsed.push_back(numerics::parse_activation(k));
            const auto dir = resolve_run_dir(act_opts, cfg.label + "_ablate_activation");
            print_arms(harness::cmd_ablate_activation(cfg, parsed, dir));
            std::cout << "run directory: " << dir.string() << '\n';
        } else if (*ablate_workers) {
            const auto cfg = resolve_config(workers_opts);
            const auto dir = resolve_run_dir(workers_opts, cfg.label + "_ablate_workers");
            print_arms(harness::cmd_ablate_workers(cfg, counts, dir));
            std::cout << "run directory: " << dir.string() << '\n';
        } else if (*show_config) {
            std::cout << harness::config_to_json(resolve_config(show_opts));
        }
    } catch (const std::exception& e) {
        std::cerr << "dpg: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}

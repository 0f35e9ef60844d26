#include "dpg/harness/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "dpg/numerics/checkpoint.hpp"
#include "dpg/rollout/collector.hpp"
#include "dpg/seeding.hpp"
#include "dpg/harness/training.hpp"

namespace dpg::harness {

namespace fs = std::filesystem;

std::vector<EpisodeOutcome> run_evaluation_episodes(const ace::EnsemblePolicy& policy,
                                                    const envs::EnvSpec& env, std::size_t episodes,
                                                    std::uint64_t seed, envs::TrajectoryWriter* dump) {
    rollout::ExplorationConfig greedy;
    greedy.explore = false;
    rollout::Collector collector(0, envs::make_environment(env), env.frame_stack, seed, greedy);
    std::vector<EpisodeOutcome> outcomes;
    outcomes.reserve(episodes);
    std::size_t step_index = 0;
    while (outcomes.size() < episodes) {
        auto step = collector.step(policy);
        if (dump) {
            std::span<const double> scores;
            long chosen = -1;
            if (step.trace) {
                scores = step.trace->scores;
                if (!step.trace->scores.empty()) chosen = static_cast<long>(step.trace->chosen_index);
            }
            dump->write(step_index, step.transition.state, step.transition.action, step.transition.reward,
                        step.finished.has_value(), scores, chosen);
        }
        ++step_index;
        if (step.finished) {
            outcomes.push_back({step.finished->total_reward, step.finished->steps, step.finished->fell});
        }
    }
    return outcomes;
}

EvaluationReport make_report(const std::string& label, std::size_t actors, std::size_t critics,
                             std::vector<EpisodeOutcome> episodes, double fall_reward_threshold) {
    if (episodes.empty()) throw std::invalid_argument("make_report: no episodes");
    EvaluationReport report;
    report.label = label;
    report.actors = actors;
    report.critics = critics;
    report.fall_reward_threshold = fall_reward_threshold;
    double sum = 0.0;
    report.max_reward = -std::numeric_limits<double>::infinity();
    for (const auto& e : episodes) {
        sum += e.reward;
        report.max_reward = std::max(report.max_reward, e.reward);
        if (e.fell || e.reward < fall_reward_threshold) ++report.fall_count;
    }
    report.average_reward = sum / static_cast<double>(episodes.size());
    report.episodes = std::move(episodes);
    return report;
}

std::uint64_t evaluation_seed(const ExperimentConfig& config) {
    return derive_seed(config.seed, "evaluation");
}

double auto_fall_threshold(const numerics::MlpParameters& first_actor, const ExperimentConfig& config,
                           std::size_t episodes) {
    const ace::EnsemblePolicy baseline({first_actor}, {});
    const auto outcomes = run_evaluation_episodes(baseline, config.env, episodes, evaluation_seed(config));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) best = std::max(best, o.reward);
    return config.evaluation.fall_fraction * best;
}

EvaluationReport cmd_evaluate(const ExperimentConfig& config, const std::vector<fs::path>& actor_checkpoints,
                              const std::vector<fs::path>& critic_checkpoints, const std::string& label,
                              std::size_t episodes, const EvaluateOptions& options) {
    const auto [n, m] = ace::parse_label(label);
    if (n != actor_checkpoints.size() || m != critic_checkpoints.size()) {
        throw std::invalid_argument("label " + label + " does not match the loaded ensemble (A" +
                                    std::to_string(actor_checkpoints.size()) + "C" +
                                    std::to_string(critic_checkpoints.size()) + ")");
    }
    if (episodes < 1) throw std::invalid_argument("evaluate: episodes must be >= 1");

    std::vector<numerics::MlpParameters> actors;
    std::vector<numerics::MlpParameters> critics;
    for (const auto& p : actor_checkpoints) actors.push_back(numerics::checkpoint_load(p));
    for (const auto& p : critic_checkpoints) critics.push_back(numerics::checkpoint_load(p));

    const std::size_t state_dim = envs::agent_state_dim(config.env);
    const std::size_t action_dim = envs::agent_action_dim(config.env);
    for (std::size_t i = 0; i < actors.size(); ++i) {
        if (actors[i].input_dim() != state_dim || actors[i].output_dim() != action_dim) {
            throw std::invalid_argument("actor " + std::to_string(i) + " (" + actor_checkpoints[i].string() +
                                        ") has dims " + std::to_string(actors[i].input_dim()) + "->" +
                                        std::to_string(actors[i].output_dim()) + ", environment needs " +
                                        std::to_string(state_dim) + "->" + std::to_string(action_dim));
        }
    }
    for (std::size_t i = 0; i < critics.size(); ++i) {
        if (critics[i].input_dim() != state_dim + action_dim || critics[i].output_dim() != 1) {
            throw std::invalid_argument("critic " + std::to_string(i) + " (" + critic_checkpoints[i].string() +
                                        ") does not map state+action to a scalar");
        }
    }

    double threshold = 0.0;
    if (options.fall_reward_threshold) {
        threshold = *options.fall_reward_threshold;
    } else if (config.evaluation.fall_reward_threshold) {
        threshold = *config.evaluation.fall_reward_threshold;
    } else {
        threshold = auto_fall_threshold(actors.front(), config, episodes);
    }

    const ace::EnsemblePolicy policy(actors, critics);
    std::optional<std::ofstream> dump_file;
    std::optional<envs::TrajectoryWriter> dump;
    if (options.trajectory_dump) {
        dump_file.emplace(*options.trajectory_dump, std::ios::trunc);
        if (!*dump_file) throw std::runtime_error("cannot write '" + options.trajectory_dump->string() + "'");
        dump.emplace(*dump_file);
    }
    auto outcomes = run_evaluation_episodes(policy, config.env, episodes, evaluation_seed(config),
                                            dump ? &*dump : nullptr);
    return make_report(label, n, m, std::move(outcomes), threshold);
}

std::pair<std::vector<fs::path>, std::vector<fs::path>> checkpoints_for_label(const fs::path& run_dir,
                                                                              const std::string& label) {
    const auto [n, m] = ace::parse_label(label);
    std::vector<fs::path> actors;
    std::vector<fs::path> critics;
    for (std::size_t i = 0; i < n; ++i) {
        auto p = actor_checkpoint_path(run_dir, i);
        if (!fs::exists(p)) throw std::invalid_argument("label " + label + ": missing " + p.string());
        actors.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < m; ++i) {
        auto p = critic_checkpoint_path(run_dir, i);
        if (!fs::exists(p)) throw std::invalid_argument("label " + label + ": missing " + p.string());
        critics.push_back(std::move(p));
    }
    return {actors, critics};
}

void write_report_header(std::ostream& out) {
    out << "label,tests,actors,critics,average_reward,max_reward,fall_off,fall_reward_threshold\n";
}

void write_report_row(std::ostream& out, const EvaluationReport& report) {
    out << report.label << ',' << report.episodes.size() << ',' << report.actors << ',' << report.critics << ',';
    envs::write_real(out, report.average_reward);
    out << ',';
    envs::write_real(out, report.max_reward);
    out << ',' << report.fall_count << ',';
    envs::write_real(out, report.fall_reward_threshold);
    out << '\n';
}

void write_rewards(std::ostream& out, const EvaluationReport& report) {
    out << "episode,reward,steps,fell\n";
    for (std::size_t i = 0; i < report.episodes.size(); ++i) {
        const auto& e = report.episodes[i];
        out << i << ',';
        envs::write_real(out, e.reward);
        out << ',' << e.steps << ',' << (e.fell ? 1 : 0) << '\n';
    }
}

} // namespace dpg::harness

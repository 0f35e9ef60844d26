// dpg-tune-pendulum: grid search over DDPG settings on pendulum swing-up.
// Prints one CSV row per grid point and the best point's resolved config.

#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpg/harness/config.hpp"
#include "dpg/harness/evaluation.hpp"
#include "dpg/harness/training.hpp"

using namespace dpg;

namespace {

double mean_return(const harness::ExperimentConfig& cfg) {
    const auto outcome = harness::train_member(cfg, 0);
    const ace::EnsemblePolicy policy({outcome.actors.front()}, {});
    const auto episodes = harness::run_evaluation_episodes(policy, cfg.env, cfg.evaluation.episodes,
                                                           harness::evaluation_seed(cfg));
    double sum = 0.0;
    for (const auto& e : episodes) sum += e.reward;
    return sum / static_cast<double>(episodes.size());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brute-force DDPG tuning on pendulum swing-up"};
    std::string config_path;
    std::vector<std::uint64_t> seeds{101, 102};
    std::vector<double> learning_rates{3e-4, 1e-3};
    std::vector<double> taus{1e-3, 5e-3};
    std::vector<double> sigmas{0.2, 0.3};
    app.add_option("-c,--config", config_path, "Base pendulum config")->required();
    app.add_option("--seeds", seeds, "Training seeds averaged per grid point");
    app.add_option("--lrs", learning_rates, "Actor and critic learning rates");
    app.add_option("--taus", taus, "Soft-update rates");
    app.add_option("--sigmas", sigmas, "OU noise scales");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto base = harness::load_config(config_path);
        double best = -std::numeric_limits<double>::infinity();
        harness::ExperimentConfig best_cfg = base;
        std::cout << "lr,tau,sigma,mean_return\n";
        for (double lr : learning_rates) {
            for (double tau : taus) {
                for (double sigma : sigmas) {
                    auto cfg = base;
                    cfg.ddpg.actor_lr = lr;
                    cfg.ddpg.critic_lr = lr;
                    cfg.ddpg.tau = tau;
                    cfg.ddpg.ou_sigma = sigma;
                    double total = 0.0;
                    for (auto seed : seeds) {
                        cfg.seed = seed;
                        total += mean_return(cfg);
                    }
                    const double score = total / static_cast<double>(seeds.size());
                    std::cout << lr << ',' << tau << ',' << sigma << ',' << score << std::endl;
                    if (score > best) {
                        best = score;
                        best_cfg = cfg;
                    }
                }
            }
        }
        std::cout << "best_mean_return," << best << '\n' << harness::config_to_json(best_cfg) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#include <benchmark/benchmark.h>

#include <random>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/ddpg/agent.hpp"
#include "dpg/envs/factory.hpp"
#include "dpg/numerics/mlp.hpp"

namespace {

using namespace dpg;

numerics::MlpParameters bench_net(std::size_t in, std::size_t out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return numerics::make_mlp(numerics::MlpShape{in, {64, 32}, out, numerics::Activation::Selu,
                                                 numerics::Activation::Linear, 1.0},
                              rng);
}

std::vector<double> bench_input(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.1 * static_cast<double>(i % 7) - 0.3;
    return x;
}

void BM_MlpForward(benchmark::State& state) {
    const auto net = bench_net(18, 2, 1);
    const auto x = bench_input(18);
    numerics::ForwardCache cache;
    for (auto _ : state) benchmark::DoNotOptimize(numerics::mlp_forward_into(net, x, cache).data());
}
BENCHMARK(BM_MlpForward);

void BM_MlpBackward(benchmark::State& state) {
    const auto net = bench_net(18, 2, 2);
    numerics::ForwardCache cache;
    numerics::mlp_forward_into(net, bench_input(18), cache);
    const std::vector<double> upstream{1.0, -0.5};
    auto acc = numerics::GradientBundle::zeros_like(net);
    for (auto _ : state) {
        numerics::mlp_backward_accumulate(net, cache, upstream, acc);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_MlpBackward);

void BM_DdpgTrainStep(benchmark::State& state) {
    const std::size_t batch = static_cast<std::size_t>(state.range(0));
    ddpg::DdpgHyperparameters hp;
    hp.batch_size = batch;
    ddpg::DdpgAgent agent(18, 2, ddpg::NetworkSpec{}, hp, 3);
    ddpg::ReplayBuffer buffer(4096, 18, 2);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 4096; ++i) {
        ddpg::Transition t;
        for (int k = 0; k < 18; ++k) t.state.push_back(u(rng)), t.next_state.push_back(u(rng));
        t.action = {u(rng), u(rng)};
        t.reward = u(rng);
        buffer.store(std::move(t));
    }
    for (auto _ : state) benchmark::DoNotOptimize(agent.train_step(buffer, rng));
}
BENCHMARK(BM_DdpgTrainStep)->Arg(64)->Arg(128);

void BM_SelectAction(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<numerics::MlpParameters> actors;
    std::vector<numerics::MlpParameters> critics;
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < n; ++i) {
        actors.push_back(numerics::make_mlp(numerics::actor_shape(18, 2, {64, 32}, numerics::Activation::Selu), rng));
        critics.push_back(numerics::make_mlp(numerics::critic_shape(18, 2, {64, 32}, numerics::Activation::Selu), rng));
    }
    const ace::EnsemblePolicy policy(actors, critics);
    const auto x = bench_input(18);
    for (auto _ : state) benchmark::DoNotOptimize(policy.select_action(x));
}
BENCHMARK(BM_SelectAction)->Arg(1)->Arg(10);

void BM_ObstacleRunnerStep(benchmark::State& state) {
    envs::EnvSpec spec;
    auto env = envs::make_environment(spec);
    env->reset(1);
    const std::vector<double> action{0.6, 0.2};
    std::uint64_t episode = 1;
    for (auto _ : state) {
        if (env->step(action).terminal) env->reset(++episode);
    }
}
BENCHMARK(BM_ObstacleRunnerStep);

} // namespace

BENCHMARK_MAIN();

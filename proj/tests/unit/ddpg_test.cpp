#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "dpg/ddpg/agent.hpp"
#include "dpg/ddpg/learning_curve.hpp"
#include "dpg/ddpg/ou_noise.hpp"
#include "dpg/ddpg/replay_buffer.hpp"
#include "dpg/ddpg/updates.hpp"
#include "support/generators.hpp"

namespace dpg::ddpg {
namespace {

using dpg::testing::random_actor;
using dpg::testing::random_critic;
using dpg::testing::random_transition;
using dpg::testing::uniform_vector;
using numerics::MlpParameters;

Transition tagged(double reward) {
    Transition t;
    t.state = {reward};
    t.action = {0.0};
    t.next_state = {reward};
    t.reward = reward;
    return t;
}

/// Network whose output is `value` for every input.
MlpParameters constant_net(std::size_t in_dim, double value) {
    MlpParameters p;
    p.output = numerics::Activation::Linear;
    numerics::DenseLayer layer(in_dim, 1);
    layer.bias[0] = value;
    p.layers.push_back(layer);
    return p;
}

TEST(ReplayBuffer, RingEviction) {
    ReplayBuffer buffer(2, 1, 1);
    buffer.store(tagged(1));
    buffer.store(tagged(2));
    buffer.store(tagged(3));
    const auto items = buffer.contents();
    ASSERT_EQ(items.size(), 2u);
    EXPECT_EQ(items[0].reward, 2.0);
    EXPECT_EQ(items[1].reward, 3.0);
    EXPECT_EQ(buffer.total_stored(), 3u);
}

TEST(ReplayBuffer, StoreAndRejections) {
    ReplayBuffer buffer(4, 1, 1);
    buffer.store(tagged(1));
    EXPECT_EQ(buffer.size(), 1u);
    auto wrong_dim = tagged(1);
    wrong_dim.action = {0.0, 0.0};
    EXPECT_THROW(buffer.store(wrong_dim), std::invalid_argument);
    auto out_of_range = tagged(1);
    out_of_range.action = {1.5};
    EXPECT_THROW(buffer.store(out_of_range), std::invalid_argument);
    auto bad_reward = tagged(1);
    bad_reward.reward = std::nan("");
    EXPECT_THROW(buffer.store(bad_reward), std::invalid_argument);
    EXPECT_EQ(buffer.size(), 1u);
}

TEST(ReplayBuffer, NoLossBeforeCapacity) {
    ReplayBuffer buffer(100, 1, 1);
    for (int i = 0; i < 60; ++i) buffer.store(tagged(i));
    const auto items = buffer.contents();
    ASSERT_EQ(items.size(), 60u);
    for (int i = 0; i < 60; ++i) EXPECT_EQ(items[i].reward, i);
}

TEST(ReplayBuffer, SamplingContract) {
    ReplayBuffer empty(4, 1, 1);
    std::mt19937_64 rng(1);
    EXPECT_THROW(empty.sample(1, rng), std::logic_error);

    ReplayBuffer one(4, 1, 1);
    one.store(tagged(9));
    const auto batch = one.sample(5, rng);
    ASSERT_EQ(batch.size(), 5u);
    for (const auto& t : batch) EXPECT_EQ(t.reward, 9.0);
}

TEST(ReplayBuffer, SamplingIsSeeded) {
    ReplayBuffer buffer(16, 1, 1);
    for (int i = 0; i < 16; ++i) buffer.store(tagged(i));
    std::mt19937_64 a(77);
    std::mt19937_64 b(77);
    EXPECT_EQ(buffer.sample(32, a), buffer.sample(32, b));
}

TEST(ReplayBuffer, UniformFrequencies) {
    ReplayBuffer buffer(4, 1, 1);
    for (int i = 0; i < 4; ++i) buffer.store(tagged(i));
    std::mt19937_64 rng(123);
    const int draws = 100000;
    std::array<int, 4> counts{};
    for (const auto& t : buffer.sample(draws, rng)) ++counts[static_cast<int>(t.reward)];
    double chi2 = 0.0;
    for (int c : counts) {
        EXPECT_NEAR(static_cast<double>(c) / draws, 0.25, 0.01);
        chi2 += std::pow(c - draws / 4.0, 2) / (draws / 4.0);
    }
    // 99.9th percentile of chi-square with 3 degrees of freedom.
    EXPECT_LT(chi2, 16.27);
}

TEST(OuNoise, ZeroSigmaDecays) {
    std::mt19937_64 rng(1);
    OuNoise at_origin(2, 0.15, 0.0, 1.0);
    for (int i = 0; i < 100; ++i) at_origin.step(rng);
    for (double x : at_origin.state()) EXPECT_EQ(x, 0.0);

    OuNoise displaced(1, 0.15, 0.0, 1.0);
    displaced.set_state({1.0});
    EXPECT_DOUBLE_EQ(displaced.step(rng)[0], 0.85);
}

TEST(OuNoise, StationaryVariance) {
    const double theta = 0.15, sigma = 0.2, dt = 0.1;
    OuNoise noise(1, theta, sigma, dt);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 2000; ++i) noise.step(rng);
    const int steps = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double x = noise.step(rng)[0];
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / steps;
    const double variance = sum_sq / steps - mean * mean;
    const double continuous = sigma * sigma / (2.0 * theta);
    EXPECT_NEAR(variance, continuous, 0.05 * continuous);
}

TEST(Bellman, Arithmetic) {
    std::mt19937_64 rng(3);
    const auto actor = random_actor(rng, 2, 1);
    const auto critic = constant_net(3, 10.0);
    Transition t;
    t.state = {0.1, 0.2};
    t.action = {0.0};
    t.next_state = {0.3, -0.4};
    t.reward = 1.0;
    EXPECT_NEAR(bellman_target(t, actor, critic, 0.96), 10.6, 1e-12);
    t.terminal = true;
    t.reward = 2.0;
    EXPECT_EQ(bellman_target(t, actor, critic, 0.96), 2.0);
    t.terminal = false;
    EXPECT_EQ(bellman_target(t, actor, critic, 0.0), 2.0);
}

TEST(Bellman, LinearInReward) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto actor = random_actor(rng, 3, 2);
        const auto critic = random_critic(rng, 3, 2);
        auto t = random_transition(rng, 3, 2);
        const double delta = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        const double y0 = bellman_target(t, actor, critic, 0.96);
        t.reward += delta;
        EXPECT_NEAR(bellman_target(t, actor, critic, 0.96) - y0, delta, 1e-12);
    }
}

TEST(SoftUpdate, ExtremesAndMidpoint) {
    std::mt19937_64 rng(5);
    const auto source = random_critic(rng, 3, 1);
    auto target = random_critic(rng, 3, 1);
    const auto original = target;
    soft_update(target, source, 0.0);
    EXPECT_EQ(target, original);
    soft_update(target, source, 1.0);
    EXPECT_EQ(target, source);

    auto zeros = source;
    zeros.for_each_value([](double& v) { v = 0.0; });
    auto twos = source;
    twos.for_each_value([](double& v) { v = 2.0; });
    soft_update(zeros, twos, 0.5);
    zeros.for_each_value([](double v) { EXPECT_EQ(v, 1.0); });

    const auto other = random_critic(rng, 4, 1);
    EXPECT_THROW(soft_update(target, other, 0.5), std::invalid_argument);
}

TEST(SoftUpdate, TargetTrailsSource) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto source = random_critic(rng, 3, 1);
        const auto before = random_critic(rng, 3, 1);
        auto after = before;
        const double tau = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        soft_update(after, source, tau);
        std::vector<double> s, b, a;
        source.for_each_value([&](double v) { s.push_back(v); });
        before.for_each_value([&](double v) { b.push_back(v); });
        after.for_each_value([&](double v) { a.push_back(v); });
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_GE(a[i], std::min(b[i], s[i]));
            EXPECT_LE(a[i], std::max(b[i], s[i]));
        }
    }
}

TEST(CriticUpdate, PerfectFitIsFixedPoint) {
    std::mt19937_64 rng(7);
    auto critic = random_critic(rng, 3, 1);
    std::vector<Transition> batch;
    std::vector<double> targets;
    for (int i = 0; i < 16; ++i) {
        batch.push_back(random_transition(rng, 3, 1));
        targets.push_back(critic_value(critic, batch.back().state, batch.back().action));
    }
    const auto lg = critic_loss_gradient(critic, batch, targets);
    EXPECT_EQ(lg.loss, 0.0);
    lg.grads.for_each_value([](double v) { EXPECT_EQ(v, 0.0); });
    const auto before = critic;
    auto adam = numerics::AdamState::for_params(critic);
    EXPECT_EQ(critic_regression_step(critic, adam, batch, targets, 1e-2), 0.0);
    EXPECT_EQ(critic, before);
}

double objective(const MlpParameters& actor, const std::vector<MlpParameters>& critics,
                 const std::vector<std::vector<double>>& states) {
    double total = 0.0;
    for (const auto& s : states) {
        const auto a = numerics::mlp_predict(actor, s);
        double q = 0.0;
        for (const auto& c : critics) q += critic_value(c, s, a);
        total += q / static_cast<double>(critics.size());
    }
    return total / static_cast<double>(states.size());
}

TEST(ActorUpdate, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t width = dpg::testing::uniform_size(rng, 2, 16);
        const auto actor = random_actor(rng, 3, 2, width);
        std::vector<MlpParameters> critics;
        for (int m = 0; m < 1 + trial % 3; ++m) critics.push_back(random_critic(rng, 3, 2, width));
        std::vector<std::vector<double>> states;
        for (int i = 0; i < 8; ++i) states.push_back(uniform_vector(rng, 3));

        const auto result = actor_objective_gradient(actor, critics, states);
        EXPECT_NEAR(result.objective, objective(actor, critics, states), 1e-12);
        std::vector<double> analytic;
        result.grads.for_each_value([&](double v) { analytic.push_back(v); });

        const double h = 1e-6;
        std::size_t index = 0;
        auto probe = actor;
        double worst = 0.0;
        probe.for_each_value([&](double& v) {
            const double saved = v;
            v = saved + h;
            const double up = objective(probe, critics, states);
            v = saved - h;
            const double down = objective(probe, critics, states);
            v = saved;
            const double numeric = (up - down) / (2.0 * h);
            const double a = analytic[index++];
            const double scale = std::max({std::abs(a), std::abs(numeric), 1e-3});
            worst = std::max(worst, std::abs(a - numeric) / scale);
        });
        EXPECT_LT(worst, 1e-4) << "trial " << trial;
    }
}

void fill(ReplayBuffer& buffer, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) buffer.store(random_transition(rng, 3, 2));
}

TEST(Agent, InsufficientBufferIsNoOp) {
    DdpgHyperparameters hp;
    hp.batch_size = 8;
    DdpgAgent agent(3, 2, NetworkSpec{{8}, {8}, numerics::Activation::Selu}, hp, 1);
    const auto before = agent.actor();
    ReplayBuffer buffer(16, 3, 2);
    std::mt19937_64 rng(1);
    EXPECT_FALSE(agent.train_step(buffer, rng).has_value());
    EXPECT_EQ(agent.actor(), before);
}

TEST(Agent, TrainingIsDeterministic) {
    DdpgHyperparameters hp;
    hp.batch_size = 16;
    hp.tau = 0.05;
    const NetworkSpec net{{16, 8}, {16, 8}, numerics::Activation::Selu};
    ReplayBuffer buffer(200, 3, 2);
    fill(buffer, 200, 4);
    DdpgAgent a(3, 2, net, hp, 9);
    DdpgAgent b(3, 2, net, hp, 9);
    std::mt19937_64 ra(5), rb(5);
    for (int i = 0; i < 30; ++i) {
        const auto sa = a.train_step(buffer, ra);
        const auto sb = b.train_step(buffer, rb);
        ASSERT_TRUE(sa && sb);
        EXPECT_EQ(sa->critic_loss, sb->critic_loss);
        EXPECT_EQ(sa->actor_objective, sb->actor_objective);
    }
    EXPECT_EQ(a.actor(), b.actor());
    EXPECT_EQ(a.target_critic(), b.target_critic());
}

TEST(Agent, CriticLearnsFixedTargets) {
    // Terminal transitions with reward equal to a fixed function of the state.
    DdpgHyperparameters hp;
    hp.batch_size = 32;
    hp.critic_lr = 3e-3;
    ReplayBuffer buffer(256, 3, 2);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 256; ++i) {
        auto t = random_transition(rng, 3, 2);
        t.terminal = true;
        t.reward = t.state[0] - 0.5 * t.state[1];
        buffer.store(t);
    }
    DdpgAgent agent(3, 2, NetworkSpec{{32}, {32}, numerics::Activation::Selu}, hp, 2);
    double first = 0.0, last = 0.0;
    for (int i = 0; i < 1500; ++i) {
        const auto stats = agent.train_step(buffer, rng);
        if (i == 0) first = stats->critic_loss;
        last = stats->critic_loss;
    }
    EXPECT_LT(last, 0.05 * first);
}

TEST(Hyperparameters, Validation) {
    DdpgHyperparameters hp;
    EXPECT_NO_THROW(hp.validate());
    hp.gamma = 1.0;
    EXPECT_THROW(hp.validate(), std::invalid_argument);
    hp = {};
    hp.tau = 0.0;
    EXPECT_THROW(hp.validate(), std::invalid_argument);
    hp = {};
    hp.batch_size = 0;
    EXPECT_THROW(hp.validate(), std::invalid_argument);
}

TEST(LearningCurve, Layout) {
    std::ostringstream plain, timed;
    LearningCurveWriter a(plain);
    LearningCurveWriter b(timed, true);
    const EpisodeRecord r{3, 12.5, 40, 160, true, 1.25};
    a.write(r);
    b.write(r);
    EXPECT_EQ(plain.str(), "episode,total_reward,steps,env_steps,fell\n3,12.5,40,160,1\n");
    EXPECT_EQ(timed.str(), "episode,total_reward,steps,env_steps,fell,wall_time\n3,12.5,40,160,1,1.25\n");
}

} // namespace
} // namespace dpg::ddpg

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "dpg/ace/ensemble_policy.hpp"
#include "dpg/ace/ensemble_trainer.hpp"
#include "dpg/ddpg/agent.hpp"
#include "dpg/ddpg/updates.hpp"
#include "support/generators.hpp"

namespace dpg::ace {
namespace {

using dpg::testing::random_actor;
using dpg::testing::random_critic;
using dpg::testing::random_transition;
using dpg::testing::uniform_size;
using dpg::testing::uniform_vector;
using numerics::MlpParameters;

/// Actor that outputs `action` for every state.
MlpParameters fixed_actor(std::size_t state_dim, const std::vector<double>& action) {
    MlpParameters p;
    p.output = numerics::Activation::Tanh;
    numerics::DenseLayer layer(state_dim, action.size());
    for (std::size_t i = 0; i < action.size(); ++i) layer.bias[i] = std::atanh(action[i]);
    p.layers.push_back(layer);
    return p;
}

MlpParameters constant_critic(std::size_t in_dim, double value) {
    MlpParameters p;
    numerics::DenseLayer layer(in_dim, 1);
    layer.bias[0] = value;
    p.layers.push_back(layer);
    return p;
}

struct Ensemble {
    std::vector<MlpParameters> actors;
    std::vector<MlpParameters> critics;
};

Ensemble random_ensemble(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t s = 3,
                         std::size_t a = 2) {
    Ensemble e;
    for (std::size_t i = 0; i < n; ++i) e.actors.push_back(random_actor(rng, s, a));
    for (std::size_t i = 0; i < m; ++i) e.critics.push_back(random_critic(rng, s, a));
    return e;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
    }
    return true;
}

TEST(Argmax, PicksMaximumLowestOnTies) {
    EXPECT_EQ(argmax_lowest(std::vector<double>{3.1, 2.0, 5.4}), 2u);
    EXPECT_EQ(argmax_lowest(std::vector<double>{1.0, 4.0, 4.0, 2.0}), 1u);
    EXPECT_EQ(argmax_lowest(std::vector<double>{7.0}), 0u);
}

TEST(ScoreAction, MeanOfCritics) {
    const std::vector<double> s{0.1, 0.2, 0.3}, a{0.5, -0.5};
    const std::vector<MlpParameters> pair{constant_critic(5, 2.0), constant_critic(5, 4.0)};
    EXPECT_EQ(score_action(pair, s, a), 3.0);
    const std::vector<MlpParameters> same(6, constant_critic(5, -1.25));
    EXPECT_EQ(score_action(same, s, a), -1.25);
    std::mt19937_64 rng(1);
    const auto critic = random_critic(rng, 3, 2);
    EXPECT_EQ(score_action(std::span(&critic, 1), s, a), ddpg::critic_value(critic, s, a));
    EXPECT_THROW(score_action(std::span<const MlpParameters>{}, s, a), std::invalid_argument);
}

TEST(Propose, OrderAndCopies) {
    std::mt19937_64 rng(2);
    const auto e = random_ensemble(rng, 10, 10);
    const EnsemblePolicy policy(e.actors, e.critics);
    const auto s = uniform_vector(rng, 3);
    const auto proposals = policy.propose_actions(s);
    ASSERT_EQ(proposals.size(), 10u);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(proposals[j], numerics::mlp_predict(e.actors[j], s));

    const EnsemblePolicy clones(std::vector<MlpParameters>(4, e.actors[3]), e.critics);
    for (const auto& p : clones.propose_actions(s)) EXPECT_EQ(p, proposals[3]);
}

TEST(Select, PassthroughIsPlainInference) {
    std::mt19937_64 rng(3);
    const auto actor = random_actor(rng, 6, 2);
    const EnsemblePolicy policy({actor}, {});
    EXPECT_EQ(policy.mode(), SelectionMode::SingleActorPassthrough);
    EXPECT_EQ(policy.label(), "A1C0");
    for (int i = 0; i < 1000; ++i) {
        const auto s = uniform_vector(rng, 6, -3.0, 3.0);
        const auto selection = policy.select_action(s);
        ASSERT_TRUE(bit_equal(selection.action, numerics::mlp_predict(actor, s)));
        EXPECT_TRUE(std::isnan(selection.trace.chosen_score));
        EXPECT_TRUE(selection.trace.scores.empty());
    }
}

TEST(Select, ArgmaxOverMeanScores) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = uniform_size(rng, 1, 4);
        const std::size_t m = trial % 2 ? 1 : n;
        const auto e = random_ensemble(rng, n, m);
        const EnsemblePolicy policy(e.actors, e.critics);
        const auto s = uniform_vector(rng, 3);
        const auto sel = policy.select_action(s);
        // Exhaustive re-evaluation of every proposal.
        double best = -INFINITY;
        std::size_t best_index = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto a = numerics::mlp_predict(e.actors[j], s);
            double q = 0.0;
            for (const auto& c : e.critics) q += ddpg::critic_value(c, s, a);
            q /= static_cast<double>(m);
            EXPECT_EQ(sel.trace.scores[j], q);
            if (q > best) best = q, best_index = j;
        }
        EXPECT_EQ(sel.trace.chosen_index, best_index);
        EXPECT_EQ(sel.trace.chosen_score, best);
        EXPECT_EQ(sel.action, sel.trace.proposed_actions[best_index]);
    }
}

TEST(Select, IdenticalActorsIgnoreCritics) {
    std::mt19937_64 rng(5);
    const auto actor = random_actor(rng, 3, 2);
    const auto critics = random_ensemble(rng, 0, 5).critics;
    const EnsemblePolicy policy(std::vector<MlpParameters>(5, actor), critics);
    const auto s = uniform_vector(rng, 3);
    const auto sel = policy.select_action(s);
    EXPECT_EQ(sel.action, numerics::mlp_predict(actor, s));
    EXPECT_EQ(sel.trace.chosen_index, 0u);
}

TEST(Select, AffineScoreTransformKeepsChoice) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = uniform_size(rng, 2, 6);
        auto e = random_ensemble(rng, n, n);
        const auto s = uniform_vector(rng, 3);
        const auto before = EnsemblePolicy(e.actors, e.critics).select_action(s).trace.chosen_index;
        const double scale = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        const double shift = std::uniform_real_distribution<double>(-50.0, 50.0)(rng);
        for (auto& c : e.critics) {
            auto& last = c.layers.back();
            for (auto& w : last.weights) w *= scale;
            last.bias[0] = last.bias[0] * scale + shift;
        }
        EXPECT_EQ(EnsemblePolicy(e.actors, e.critics).select_action(s).trace.chosen_index, before);
    }
}

TEST(Select, AddingActorNeverLowersChosenScore) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto e = random_ensemble(rng, 5, 3);
        const auto s = uniform_vector(rng, 3);
        double previous = -INFINITY;
        for (std::size_t n = 1; n <= 5; ++n) {
            const std::vector<MlpParameters> subset(e.actors.begin(), e.actors.begin() + n);
            const double score = EnsemblePolicy(subset, e.critics).select_action(s).trace.chosen_score;
            EXPECT_GE(score, previous);
            previous = score;
        }
    }
}

TEST(Select, PrefersSafeProposal) {
    // Critic punishes a large first action coordinate; the second actor is safe.
    MlpParameters critic;
    numerics::DenseLayer layer(5, 1);
    layer.weights[3] = -10.0;
    critic.layers.push_back(layer);
    const std::vector<MlpParameters> actors{fixed_actor(3, {0.9, 0.0}), fixed_actor(3, {0.1, 0.5})};
    const EnsemblePolicy policy(actors, {critic, critic});
    const auto sel = policy.select_action(std::vector<double>{0.0, 0.0, 0.0});
    EXPECT_EQ(sel.trace.chosen_index, 1u);
}

TEST(Policy, ConstructionContract) {
    std::mt19937_64 rng(8);
    const auto e = random_ensemble(rng, 3, 3);
    EXPECT_THROW(EnsemblePolicy(e.actors, {}), std::invalid_argument);
    EXPECT_THROW(EnsemblePolicy({}, e.critics), std::invalid_argument);
    auto mismatched = e.actors;
    mismatched.push_back(random_actor(rng, 4, 2));
    EXPECT_THROW(EnsemblePolicy(mismatched, e.critics), std::invalid_argument);
    EXPECT_THROW(EnsemblePolicy(e.actors, {random_critic(rng, 3, 3)}), std::invalid_argument);
    EXPECT_EQ(EnsemblePolicy(e.actors, {e.critics[0]}).label(), "A3C1");
}

TEST(Label, Parse) {
    EXPECT_EQ(parse_label("A10C10"), (std::pair<std::size_t, std::size_t>{10, 10}));
    EXPECT_EQ(parse_label("A1C0"), (std::pair<std::size_t, std::size_t>{1, 0}));
    EXPECT_THROW(parse_label("A10"), std::invalid_argument);
    EXPECT_THROW(parse_label("a1c0"), std::invalid_argument);
}

TEST(AceTarget, MaxOverActorsArithmetic) {
    const std::vector<MlpParameters> actors{fixed_actor(2, {0.2}), fixed_actor(2, {-0.3})};
    const CriticEval eval = [](std::span<const double>, std::span<const double> a) {
        return a[0] > 0.0 ? 5.0 : 7.0;
    };
    ddpg::Transition t;
    t.state = {0.0, 0.0};
    t.action = {0.0};
    t.next_state = {0.5, 0.5};
    t.reward = 1.0;
    EXPECT_NEAR(ace_bellman_target(t, actors, eval, 0.96), 7.72, 1e-12);
    t.terminal = true;
    EXPECT_EQ(ace_bellman_target(t, actors, eval, 0.96), 1.0);
    EXPECT_THROW(ace_bellman_target(t, std::span<const MlpParameters>{}, eval, 0.96), std::invalid_argument);
}

TEST(AceTarget, SingleActorReducesToBellman) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto e = random_ensemble(rng, 1, 1);
        const auto t = random_transition(rng, 3, 2);
        const double expected = ddpg::bellman_target(t, e.actors[0], e.critics[0], 0.96);
        const double got = ace_bellman_target(t, e.actors, e.critics, 0.96);
        ASSERT_EQ(std::bit_cast<std::uint64_t>(got), std::bit_cast<std::uint64_t>(expected));
    }
}

TEST(AceTarget, MatchesBruteForce) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = uniform_size(rng, 1, 4);
        const auto e = random_ensemble(rng, n, uniform_size(rng, 1, 4));
        const auto t = random_transition(rng, 3, 2);
        double best = -INFINITY;
        for (const auto& actor : e.actors) {
            const auto a = numerics::mlp_predict(actor, t.next_state);
            double q = 0.0;
            for (const auto& c : e.critics) q += ddpg::critic_value(c, t.next_state, a);
            best = std::max(best, q / static_cast<double>(e.critics.size()));
        }
        const double expected = t.reward + 0.96 * (t.terminal ? 0.0 : 1.0) * best;
        EXPECT_NEAR(ace_bellman_target(t, e.actors, e.critics, 0.96), expected, 1e-12);
    }
}

void fill(ddpg::ReplayBuffer& buffer, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) buffer.store(random_transition(rng, 3, 2));
}

TEST(Trainer, SinglePairMatchesDdpg) {
    std::mt19937_64 rng(11);
    const auto e = random_ensemble(rng, 1, 1);
    ddpg::DdpgHyperparameters hp;
    hp.batch_size = 16;
    hp.tau = 0.01;
    ddpg::ReplayBuffer buffer(300, 3, 2);
    fill(buffer, 300, 12);
    ddpg::DdpgAgent agent(e.actors[0], e.critics[0], hp);
    EnsembleTrainer trainer(e.actors, e.critics, hp);
    std::mt19937_64 ra(13), rb(13);
    for (int step = 0; step < 25; ++step) {
        const auto sa = agent.train_step(buffer, ra);
        const auto sb = trainer.train_step(buffer, rb);
        ASSERT_TRUE(sa && sb);
        EXPECT_EQ(sa->critic_loss, sb->critic_losses[0]);
        EXPECT_EQ(sa->actor_objective, sb->actor_objectives[0]);
    }
    EXPECT_EQ(agent.actor(), trainer.actors()[0]);
    EXPECT_EQ(agent.critic(), trainer.critics()[0]);
    EXPECT_EQ(agent.target_actor(), trainer.target_actors()[0]);
    EXPECT_EQ(agent.target_critic(), trainer.target_critics()[0]);
}

TEST(Trainer, EveryActorMoves) {
    std::mt19937_64 rng(14);
    const auto e = random_ensemble(rng, 3, 3);
    ddpg::DdpgHyperparameters hp;
    hp.batch_size = 8;
    ddpg::ReplayBuffer buffer(64, 3, 2);
    fill(buffer, 64, 15);
    EnsembleTrainer trainer(e.actors, e.critics, hp);
    const auto stats = trainer.train_step(buffer, rng);
    ASSERT_TRUE(stats);
    EXPECT_EQ(stats->critic_losses.size(), 3u);
    std::size_t votes = 0;
    for (auto c : stats->bootstrap_choices) votes += c;
    EXPECT_EQ(votes, 8u);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NE(trainer.actors()[j], e.actors[j]) << j;
}

TEST(Trainer, InsufficientBufferIsNoOp) {
    std::mt19937_64 rng(16);
    const auto e = random_ensemble(rng, 2, 2);
    ddpg::DdpgHyperparameters hp;
    hp.batch_size = 32;
    ddpg::ReplayBuffer buffer(64, 3, 2);
    fill(buffer, 10, 17);
    EnsembleTrainer trainer(e.actors, e.critics, hp);
    EXPECT_FALSE(trainer.train_step(buffer, rng));
    EXPECT_EQ(trainer.actors(), e.actors);
}

TEST(Trainer, ChoicesReproducible) {
    auto run = [] {
        std::mt19937_64 rng(18);
        const auto e = random_ensemble(rng, 4, 4);
        ddpg::DdpgHyperparameters hp;
        hp.batch_size = 16;
        ddpg::ReplayBuffer buffer(128, 3, 2);
        fill(buffer, 128, 19);
        EnsembleTrainer trainer(e.actors, e.critics, hp);
        for (int i = 0; i < 10; ++i) trainer.train_step(buffer, rng);
        std::vector<std::size_t> chosen;
        const auto policy = trainer.policy();
        std::mt19937_64 probe(20);
        for (int i = 0; i < 100; ++i) chosen.push_back(policy.select_action(uniform_vector(probe, 3)).trace.chosen_index);
        return chosen;
    };
    EXPECT_EQ(run(), run());
}

} // namespace
} // namespace dpg::ace

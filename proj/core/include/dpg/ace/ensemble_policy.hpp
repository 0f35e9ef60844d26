#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dpg/ddpg/transition.hpp"
#include "dpg/numerics/mlp.hpp"

namespace dpg::ace {

enum class SelectionMode {
    /// Every actor proposes; the action with the highest mean critic score wins.
    ArgmaxMeanCritic,
    /// One actor, no critics: plain DDPG inference.
    SingleActorPassthrough
};

/// Diagnostic record of one selection.
struct SelectionTrace {
    std::vector<std::vector<double>> proposed_actions;
    /// Mean critic score per proposal; empty in passthrough mode.
    std::vector<double> scores;
    std::size_t chosen_index = 0;
    /// NaN in passthrough mode.
    double chosen_score = 0.0;
};

struct Selection {
    std::vector<double> action;
    SelectionTrace trace;
};

/// Mean critic score (1/M) sum_m Q_m(state, action).
/// Throws std::invalid_argument when `critics` is empty.
double score_action(std::span<const numerics::MlpParameters> critics,
                    std::span<const double> state, std::span<const double> action);

/// Index of the maximum, lowest index on exact ties. Requires a non-empty span.
std::size_t argmax_lowest(std::span<const double> values);

/// N actors and M critics with argmax selection over actor proposals.
///
/// Invariants: N >= 1; all actors share input/output dims; every critic takes
/// [state, action] and returns a scalar; M = 0 only with N = 1.
/// Immutable after construction; select_action is safe from many threads.
class EnsemblePolicy {
public:
    EnsemblePolicy(std::vector<numerics::MlpParameters> actors,
                   std::vector<numerics::MlpParameters> critics);

    /// mu_j(state) for every actor, in actor order.
    std::vector<std::vector<double>> propose_actions(std::span<const double> state) const;

    /// Picks the proposal with the highest mean critic score.
    Selection select_action(std::span<const double> state) const;

    const std::vector<numerics::MlpParameters>& actors() const noexcept { return actors_; }
    const std::vector<numerics::MlpParameters>& critics() const noexcept { return critics_; }
    SelectionMode mode() const noexcept { return mode_; }
    std::size_t actor_count() const noexcept { return actors_.size(); }
    std::size_t critic_count() const noexcept { return critics_.size(); }
    std::size_t state_dim() const noexcept { return actors_.front().input_dim(); }
    std::size_t action_dim() const noexcept { return actors_.front().output_dim(); }

    /// "A<N>C<M>".
    std::string label() const;

private:
    std::vector<numerics::MlpParameters> actors_;
    std::vector<numerics::MlpParameters> critics_;
    SelectionMode mode_;
};

/// Critic evaluator Q(state, action) used by the ensemble Bellman target.
using CriticEval = std::function<double(std::span<const double>, std::span<const double>)>;

/// i* = argmax_j Q(s', mu_j(s')); y = r + gamma * (1 - terminal) * Q(s', mu_{i*}(s')).
/// Throws std::invalid_argument when `actors` is empty.
double ace_bellman_target(const ddpg::Transition& t, std::span<const numerics::MlpParameters> actors,
                          const CriticEval& critic_eval, double gamma);

/// Same with the mean of `critics` as the evaluator.
double ace_bellman_target(const ddpg::Transition& t, std::span<const numerics::MlpParameters> actors,
                          std::span<const numerics::MlpParameters> critics, double gamma);

/// Parses "A<N>C<M>" into (N, M). Throws std::invalid_argument on bad syntax.
std::pair<std::size_t, std::size_t> parse_label(const std::string& label);

} // namespace dpg::ace

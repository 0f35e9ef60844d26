#include "dpg/ace/ensemble_policy.hpp"

#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>

#include "dpg/ddpg/updates.hpp"

namespace dpg::ace {

using numerics::MlpParameters;

double score_action(std::span<const MlpParameters> critics, std::span<const double> state,
                    std::span<const double> action) {
    if (critics.empty()) throw std::invalid_argument("score_action: no critics to score with");
    const auto x = ddpg::critic_input(state, action);
    numerics::ForwardCache cache;
    double sum = 0.0;
    for (const auto& critic : critics) sum += numerics::mlp_forward_into(critic, x, cache)[0];
    return sum / static_cast<double>(critics.size());
}

std::size_t argmax_lowest(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax_lowest: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

EnsemblePolicy::EnsemblePolicy(std::vector<MlpParameters> actors, std::vector<MlpParameters> critics)
    : actors_(std::move(actors)), critics_(std::move(critics)) {
    if (actors_.empty()) throw std::invalid_argument("EnsemblePolicy: at least one actor required");
    if (critics_.empty() && actors_.size() != 1) {
        throw std::invalid_argument("EnsemblePolicy: zero critics is only valid with a single actor");
    }
    const auto& first = actors_.front();
    for (const auto& actor : actors_) {
        actor.validate();
        if (actor.layers.empty() || actor.input_dim() != first.input_dim() ||
            actor.output_dim() != first.output_dim()) {
            throw std::invalid_argument("EnsemblePolicy: actors disagree on state/action dims");
        }
    }
    for (const auto& critic : critics_) {
        critic.validate();
        if (critic.input_dim() != first.input_dim() + first.output_dim() || critic.output_dim() != 1) {
            throw std::invalid_argument("EnsemblePolicy: critic dims do not match state+action -> 1");
        }
    }
    mode_ = critics_.empty() ? SelectionMode::SingleActorPassthrough : SelectionMode::ArgmaxMeanCritic;
}

std::vector<std::vector<double>> EnsemblePolicy::propose_actions(std::span<const double> state) const {
    std::vector<std::vector<double>> proposals;
    proposals.reserve(actors_.size());
    numerics::ForwardCache cache;
    for (const auto& actor : actors_) {
        auto out = numerics::mlp_forward_into(actor, state, cache);
        proposals.emplace_back(out.begin(), out.end());
    }
    return proposals;
}

Selection EnsemblePolicy::select_action(std::span<const double> state) const {
    Selection selection;
    auto& trace = selection.trace;
    trace.proposed_actions = propose_actions(state);
    if (mode_ == SelectionMode::SingleActorPassthrough) {
        trace.chosen_index = 0;
        trace.chosen_score = std::numeric_limits<double>::quiet_NaN();
    } else {
        trace.scores.reserve(trace.proposed_actions.size());
        for (const auto& action : trace.proposed_actions) {
            trace.scores.push_back(score_action(critics_, state, action));
        }
        trace.chosen_index = argmax_lowest(trace.scores);
        trace.chosen_score = trace.scores[trace.chosen_index];
    }
    selection.action = trace.proposed_actions[trace.chosen_index];
    return selection;
}

std::string EnsemblePolicy::label() const {
    return "A" + std::to_string(actors_.size()) + "C" + std::to_string(critics_.size());
}

double ace_bellman_target(const ddpg::Transition& t, std::span<const MlpParameters> actors,
                          const CriticEval& critic_eval, double gamma) {
    if (actors.empty()) throw std::invalid_argument("ace_bellman_target: at least one actor required");
    double best = -std::numeric_limits<double>::infinity();
    bool first = true;
    numerics::ForwardCache cache;
    for (const auto& actor : actors) {
        const auto action = numerics::mlp_forward_into(actor, t.next_state, cache);
        const double q = critic_eval(t.next_state, action);
        if (first || q > best) {
            best = q;
            first = false;
        }
    }
    return t.reward + gamma * (t.terminal ? 0.0 : 1.0) * best;
}

double ace_bellman_target(const ddpg::Transition& t, std::span<const MlpParameters> actors,
                          std::span<const MlpParameters> critics, double gamma) {
    return ace_bellman_target(
        t, actors,
        [critics](std::span<const double> s, std::span<const double> a) { return score_action(critics, s, a); },
        gamma);
}

std::pair<std::size_t, std::size_t> parse_label(const std::string& label) {
    static const std::regex pattern(R"(A(\d+)C(\d+))");
    std::smatch match;
    if (!std::regex_match(label, match, pattern)) {
        throw std::invalid_argument("label '" + label + "' is not of the form A<actors>C<critics>");
    }
    return {std::stoul(match[1].str()), std::stoul(match[2].str())};
}

} // namespace dpg::ace

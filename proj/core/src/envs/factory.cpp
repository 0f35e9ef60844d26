#include "dpg/envs/factory.hpp"

#include <stdexcept>

#include "dpg/envs/wrappers.hpp"

namespace dpg::envs {

std::unique_ptr<Environment> make_environment(const EnvSpec& spec) {
    std::unique_ptr<Environment> env;
    if (spec.name == "obstacle_runner") {
        env = std::make_unique<ObstacleRunner>(spec.runner);
    } else if (spec.name == "pendulum") {
        env = std::make_unique<Pendulum>(spec.pendulum);
    } else {
        throw std::invalid_argument("env.name: unknown environment '" + spec.name + "'");
    }
    if (spec.frame_skip < 1) throw std::invalid_argument("env.frame_skip: must be >= 1");
    if (spec.frame_skip > 1) env = std::make_unique<FrameSkip>(std::move(env), spec.frame_skip);
    return env;
}

std::size_t agent_state_dim(const EnvSpec& spec) {
    return make_environment(spec)->observation_dim() * spec.frame_stack;
}

std::size_t agent_action_dim(const EnvSpec& spec) {
    return make_environment(spec)->action_dim();
}

} // namespace dpg::envs

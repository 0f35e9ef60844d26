#pragma once

#include <string>

#include "dpg/envs/obstacle_runner.hpp"
#include "dpg/envs/pendulum.hpp"

namespace dpg::envs {

/// Which environment to build and how the agent sees it.
struct EnvSpec {
    std::string name = "obstacle_runner";
    ObstacleRunnerConfig runner;
    Pendulum::Config pendulum;
    /// Action repeat applied by the agent pipeline.
    int frame_skip = 4;
    /// Observation frames stacked into the agent state.
    std::size_t frame_stack = 3;
};

/// Builds the raw environment wrapped in FrameSkip when frame_skip > 1.
/// Throws std::invalid_argument for unknown names.
std::unique_ptr<Environment> make_environment(const EnvSpec& spec);

/// Agent state dimension: frame_stack x base observation dim.
std::size_t agent_state_dim(const EnvSpec& spec);
std::size_t agent_action_dim(const EnvSpec& spec);

} // namespace dpg::envs

#pragma once

#include <cstddef>
#include <ostream>

namespace dpg::ddpg {

/// One finished training episode.
struct EpisodeRecord {
    std::size_t episode = 0;
    double total_reward = 0.0;
    std::size_t steps = 0;
    /// Agent steps taken across all episodes so far.
    std::size_t env_steps = 0;
    bool fell = false;
    /// Seconds since training started; only emitted when the writer asks for it.
    double wall_time = 0.0;
};

/// Delimited learning-curve emitter:
///     episode,total_reward,steps,env_steps,fell[,wall_time]
/// Wall time is opt-in so that seeded runs produce byte-identical curves.
class LearningCurveWriter {
public:
    explicit LearningCurveWriter(std::ostream& out, bool with_wall_time = false);
    void write(const EpisodeRecord& record);

private:
    std::ostream& out_;
    bool with_wall_time_;
};

} // namespace dpg::ddpg

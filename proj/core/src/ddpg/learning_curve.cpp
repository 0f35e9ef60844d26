#include "dpg/ddpg/learning_curve.hpp"

#include "dpg/envs/trajectory.hpp"

namespace dpg::ddpg {

LearningCurveWriter::LearningCurveWriter(std::ostream& out, bool with_wall_time)
    : out_(out), with_wall_time_(with_wall_time) {
    out_ << "episode,total_reward,steps,env_steps,fell";
    if (with_wall_time_) out_ << ",wall_time";
    out_ << '\n';
}

void LearningCurveWriter::write(const EpisodeRecord& record) {
    out_ << record.episode << ',';
    envs::write_real(out_, record.total_reward);
    out_ << ',' << record.steps << ',' << record.env_steps << ',' << (record.fell ? 1 : 0);
    if (with_wall_time_) {
        out_ << ',';
        envs::write_real(out_, record.wall_time);
    }
    out_ << '\n';
    out_.flush();
}

} // namespace dpg::ddpg

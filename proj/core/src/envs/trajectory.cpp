#include "dpg/envs/trajectory.hpp"

#include <charconv>
#include <string>

namespace dpg::envs {

void write_real(std::ostream& out, double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.write(buffer, end - buffer);
}

void write_joined(std::ostream& out, std::span<const double> values, char sep) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << sep;
        write_real(out, values[i]);
    }
}

TrajectoryWriter::TrajectoryWriter(std::ostream& out) : out_(out) {
    out_ << "step,observation,action,reward,terminal,chosen_index,scores\n";
}

void TrajectoryWriter::write(std::size_t step, std::span<const double> observation,
                             std::span<const double> action, double reward, bool terminal,
                             std::span<const double> critic_scores, long chosen_index) {
    out_ << step << ',';
    write_joined(out_, observation);
    out_ << ',';
    write_joined(out_, action);
    out_ << ',';
    write_real(out_, reward);
    out_ << ',' << (terminal ? 1 : 0) << ',' << chosen_index << ',';
    write_joined(out_, critic_scores);
    out_ << '\n';
}

} // namespace dpg::envs

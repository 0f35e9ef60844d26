#pragma once

#include <cstddef>
#include <ostream>
#include <span>

namespace dpg::envs {

/// Per-step trajectory dump as delimited text:
///
///     step,observation,action,reward,terminal,chosen_index,scores
///
/// Vector-valued fields are ';'-joined. chosen_index is -1 and scores empty
/// when no critic ranked the action.
class TrajectoryWriter {
public:
    explicit TrajectoryWriter(std::ostream& out);

    void write(std::size_t step, std::span<const double> observation,
               std::span<const double> action, double reward, bool terminal,
               std::span<const double> critic_scores = {}, long chosen_index = -1);

private:
    std::ostream& out_;
};

/// Formats a double with enough digits to round-trip.
void write_real(std::ostream& out, double value);
void write_joined(std::ostream& out, std::span<const double> values, char sep = ';');

} // namespace dpg::envs

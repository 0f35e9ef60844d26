#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dpg/numerics/mlp.hpp"

namespace dpg::numerics {

/// Current on-disk format version.
inline constexpr int kCheckpointVersion = 1;

/// Text layout, one token group per line:
///
///     dpg-mlp-checkpoint <version>
///     hidden <activation>
///     output <activation>
///     layers <count>
///     layer <in_dim> <out_dim>
///     w <in_dim hex-floats>        (out_dim lines, row-major)
///     b <out_dim hex-floats>
///     ...
///     end
///
/// Values are written as C99 hex-floats so the round trip is bit-exact.
void write_checkpoint(std::ostream& out, const MlpParameters& params);
MlpParameters read_checkpoint(std::istream& in);

void checkpoint_save(const MlpParameters& params, const std::filesystem::path& path);

/// Throws std::runtime_error with a diagnostic for unreadable, corrupt,
/// truncated or unknown-version files.
MlpParameters checkpoint_load(const std::filesystem::path& path);

} // namespace dpg::numerics

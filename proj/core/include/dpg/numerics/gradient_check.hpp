#pragma once

#include <functional>
#include <span>

#include "dpg/numerics/mlp.hpp"

namespace dpg::numerics {

/// Signature of a backward pass under test.
using BackwardFn = std::function<GradientBundle(const MlpParameters&, const ForwardCache&,
                                                std::span<const double>)>;

/// Scale-aware relative error |a - n| / max(|a|, |n|, floor). The floor keeps
/// near-zero gradients from amplifying finite-difference round-off.
inline constexpr double kGradientCheckFloor = 1e-3;

double relative_error(double analytic, double numeric, double floor = kGradientCheckFloor);

/// Compares `backward` against central finite differences of sum(output) over
/// every parameter and every input coordinate; returns the maximum relative error.
/// Throws std::invalid_argument if h <= 0.
double gradient_check(const MlpParameters& params, std::span<const double> input, double h,
                      const BackwardFn& backward);

/// Same, using mlp_backward.
double gradient_check(const MlpParameters& params, std::span<const double> input, double h);

} // namespace dpg::numerics

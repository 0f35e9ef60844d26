#pragma once

#include <string>
#include <string_view>

namespace dpg::numerics {

/// Elementwise nonlinearity applied after a dense layer.
enum class Activation {
    Linear,
    Selu,
    Relu,
    LeakyRelu,
    Tanh,
    Sigmoid
};

/// Standard SELU constants (Klambauer et al. 2017).
inline constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
inline constexpr double kSeluScale = 1.0507009873554804934193349852946;
inline constexpr double kLeakyReluSlope = 0.01;

/// Evaluates the activation at x. Throws std::domain_error on non-finite input.
double activation_apply(Activation kind, double x);

/// Derivative with respect to the pre-activation. At the kink of ReLU-like
/// functions the left derivative is used.
double activation_derivative(Activation kind, double x);

// Unchecked variants used on hot paths where inputs are already known finite.
double activation_value_unchecked(Activation kind, double x) noexcept;
double activation_derivative_unchecked(Activation kind, double x) noexcept;

std::string_view to_string(Activation kind) noexcept;

/// Parses names such as "selu", "SELU", "leaky_relu", "LeakyReLU".
/// Throws std::invalid_argument for unknown names.
Activation parse_activation(std::string_view name);

} // namespace dpg::numerics

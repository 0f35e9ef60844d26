#include "dpg/numerics/activation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace dpg::numerics {

double activation_value_unchecked(Activation kind, double x) noexcept {
    switch (kind) {
        case Activation::Linear: return x;
        case Activation::Selu:
            return x > 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * std::expm1(x);
        case Activation::Relu: return x > 0.0 ? x : 0.0;
        case Activation::LeakyRelu: return x > 0.0 ? x : kLeakyReluSlope * x;
        case Activation::Tanh: return std::tanh(x);
        case Activation::Sigmoid:
            // Split by sign so exp never overflows.
            if (x >= 0.0) {
                return 1.0 / (1.0 + std::exp(-x));
            } else {
                const double e = std::exp(x);
                return e / (1.0 + e);
            }
    }
    return x;
}

double activation_derivative_unchecked(Activation kind, double x) noexcept {
    switch (kind) {
        case Activation::Linear: return 1.0;
        case Activation::Selu:
            return x > 0.0 ? kSeluScale : kSeluScale * kSeluAlpha * std::exp(x);
        case Activation::Relu: return x > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyRelu: return x > 0.0 ? 1.0 : kLeakyReluSlope;
        case Activation::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Activation::Sigmoid: {
            const double s = activation_value_unchecked(Activation::Sigmoid, x);
            return s * (1.0 - s);
        }
    }
    return 1.0;
}

double activation_apply(Activation kind, double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("activation_apply: non-finite input");
    }
    return activation_value_unchecked(kind, x);
}

double activation_derivative(Activation kind, double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("activation_derivative: non-finite input");
    }
    return activation_derivative_unchecked(kind, x);
}

std::string_view to_string(Activation kind) noexcept {
    switch (kind) {
        case Activation::Linear: return "linear";
        case Activation::Selu: return "selu";
        case Activation::Relu: return "relu";
        case Activation::LeakyRelu: return "leaky_relu";
        case Activation::Tanh: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "unknown";
}

Activation parse_activation(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (c == '_' || c == '-') continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "linear" || key == "identity") return Activation::Linear;
    if (key == "selu") return Activation::Selu;
    if (key == "relu") return Activation::Relu;
    if (key == "leakyrelu") return Activation::LeakyRelu;
    if (key == "tanh") return Activation::Tanh;
    if (key == "sigmoid") return Activation::Sigmoid;
    throw std::invalid_argument("unknown activation kind '" + std::string(name) + "'");
}

} // namespace dpg::numerics

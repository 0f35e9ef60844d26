#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "dpg/numerics/activation.hpp"

namespace dpg::numerics {

/// Dense layer y = W x + b with W stored row-major, shape (out_dim, in_dim).
struct DenseLayer {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(std::size_t in, std::size_t out);

    double& weight(std::size_t row, std::size_t col) { return weights[row * in_dim + col]; }
    double weight(std::size_t row, std::size_t col) const { return weights[row * in_dim + col]; }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Feed-forward network: every layer except the last uses `hidden`, the last
/// uses `output`. An empty layer list is the identity map.
struct MlpParameters {
    std::vector<DenseLayer> layers;
    Activation hidden = Activation::Selu;
    Activation output = Activation::Linear;

    std::size_t input_dim() const noexcept { return layers.empty() ? 0 : layers.front().in_dim; }
    std::size_t output_dim() const noexcept { return layers.empty() ? 0 : layers.back().out_dim; }
    std::size_t parameter_count() const noexcept;

    Activation activation_for(std::size_t layer_index) const noexcept {
        return layer_index + 1 == layers.size() ? output : hidden;
    }

    /// Throws std::invalid_argument if layer dims do not chain, storage sizes
    /// disagree with the declared dims, or any value is non-finite.
    void validate() const;

    /// True when both networks have identical layer dims.
    bool same_shape(const MlpParameters& other) const noexcept;

    /// Applies fn(double&) to every weight then bias, layer by layer.
    template <typename Fn>
    void for_each_value(Fn&& fn) {
        for (auto& layer : layers) {
            for (auto& w : layer.weights) fn(w);
            for (auto& b : layer.bias) fn(b);
        }
    }
    template <typename Fn>
    void for_each_value(Fn&& fn) const {
        for (const auto& layer : layers) {
            for (const auto& w : layer.weights) fn(w);
            for (const auto& b : layer.bias) fn(b);
        }
    }

    friend bool operator==(const MlpParameters&, const MlpParameters&) = default;
};

/// Architecture description used to build freshly initialized networks.
struct MlpShape {
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden_widths;
    std::size_t output_dim = 0;
    Activation hidden = Activation::Selu;
    Activation output = Activation::Linear;
    /// Multiplier applied to the final layer's initial weights and biases.
    double final_layer_scale = 1.0;
};

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialization of weights and biases.
MlpParameters make_mlp(const MlpShape& shape, std::mt19937_64& rng);

/// Actor: tanh output, final layer scaled by 1e-3 so initial actions are near zero.
MlpShape actor_shape(std::size_t state_dim, std::size_t action_dim,
                     std::vector<std::size_t> widths, Activation hidden);
/// Critic over the concatenation [state, action], linear scalar output.
MlpShape critic_shape(std::size_t state_dim, std::size_t action_dim,
                      std::vector<std::size_t> widths, Activation hidden);

/// Per-layer values kept by a forward pass for the backward pass.
/// activations[0] is the input, activations[k + 1] the output of layer k.
struct ForwardCache {
    std::vector<std::vector<double>> activations;
    std::vector<std::vector<double>> pre_activations;

    std::span<const double> output() const noexcept { return activations.back(); }
};

/// Gradients mirroring an MlpParameters layout plus the gradient w.r.t. the input.
struct GradientBundle {
    std::vector<DenseLayer> layers;
    std::vector<double> input_gradient;

    /// Zero bundle shaped like params.
    static GradientBundle zeros_like(const MlpParameters& params);

    void set_zero();
    /// this += scale * other. Shapes must match.
    void add_scaled(const GradientBundle& other, double scale);
    bool matches(const MlpParameters& params) const noexcept;

    template <typename Fn>
    void for_each_value(Fn&& fn) const {
        for (const auto& layer : layers) {
            for (const auto& w : layer.weights) fn(w);
            for (const auto& b : layer.bias) fn(b);
        }
    }
};

/// Runs the network, filling `cache` (buffers are reused across calls).
/// Throws std::invalid_argument on input dimension mismatch.
std::span<const double> mlp_forward_into(const MlpParameters& params,
                                         std::span<const double> input,
                                         ForwardCache& cache);

struct ForwardResult {
    std::vector<double> output;
    ForwardCache cache;
};

ForwardResult mlp_forward(const MlpParameters& params, std::span<const double> input);

/// Output only, no cache retained.
std::vector<double> mlp_predict(const MlpParameters& params, std::span<const double> input);

/// Gradients of dot(output, upstream) w.r.t. every parameter and the input.
GradientBundle mlp_backward(const MlpParameters& params, const ForwardCache& cache,
                            std::span<const double> upstream);

/// Adds `scale` times the gradients of dot(output, upstream) into `accumulator`
/// and overwrites accumulator.input_gradient with the (unscaled) input gradient.
void mlp_backward_accumulate(const MlpParameters& params, const ForwardCache& cache,
                             std::span<const double> upstream, GradientBundle& accumulator,
                             double scale = 1.0);

/// Gradient of dot(output, upstream) w.r.t. the input only.
std::vector<double> mlp_input_gradient(const MlpParameters& params, const ForwardCache& cache,
                                       std::span<const double> upstream);

} // namespace dpg::numerics

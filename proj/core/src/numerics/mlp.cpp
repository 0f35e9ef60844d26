#include "dpg/numerics/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpg::numerics {

DenseLayer::DenseLayer(std::size_t in, std::size_t out)
    : in_dim(in), out_dim(out), weights(in * out, 0.0), bias(out, 0.0) {}

std::size_t MlpParameters::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.weights.size() + layer.bias.size();
    return n;
}

void MlpParameters::validate() const {
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& layer = layers[k];
        const std::string where = "layer " + std::to_string(k);
        if (layer.in_dim == 0 || layer.out_dim == 0) {
            throw std::invalid_argument(where + ": zero dimension");
        }
        if (layer.weights.size() != layer.in_dim * layer.out_dim ||
            layer.bias.size() != layer.out_dim) {
            throw std::invalid_argument(where + ": storage does not match declared dims");
        }
        if (k > 0 && layers[k - 1].out_dim != layer.in_dim) {
            throw std::invalid_argument(where + ": in_dim " + std::to_string(layer.in_dim) +
                                        " does not chain with previous out_dim " +
                                        std::to_string(layers[k - 1].out_dim));
        }
        for (double w : layer.weights) {
            if (!std::isfinite(w)) throw std::invalid_argument(where + ": non-finite weight");
        }
        for (double b : layer.bias) {
            if (!std::isfinite(b)) throw std::invalid_argument(where + ": non-finite bias");
        }
    }
}

bool MlpParameters::same_shape(const MlpParameters& other) const noexcept {
    if (layers.size() != other.layers.size()) return false;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (layers[k].in_dim != other.layers[k].in_dim ||
            layers[k].out_dim != other.layers[k].out_dim) {
            return false;
        }
    }
    return true;
}

MlpParameters make_mlp(const MlpShape& shape, std::mt19937_64& rng) {
    if (shape.input_dim == 0 || shape.output_dim == 0) {
        throw std::invalid_argument("make_mlp: input and output dims must be positive");
    }
    MlpParameters params;
    params.hidden = shape.hidden;
    params.output = shape.output;

    std::vector<std::size_t> dims;
    dims.push_back(shape.input_dim);
    for (auto w : shape.hidden_widths) {
        if (w == 0) throw std::invalid_argument("make_mlp: zero hidden width");
        dims.push_back(w);
    }
    dims.push_back(shape.output_dim);

    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        DenseLayer layer(dims[k], dims[k + 1]);
        const double bound = 1.0 / std::sqrt(static_cast<double>(dims[k]));
        const double scale = (k + 2 == dims.size()) ? shape.final_layer_scale : 1.0;
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (auto& w : layer.weights) w = scale * dist(rng);
        for (auto& b : layer.bias) b = scale * dist(rng);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

MlpShape actor_shape(std::size_t state_dim, std::size_t action_dim,
                     std::vector<std::size_t> widths, Activation hidden) {
    return MlpShape{state_dim, std::move(widths), action_dim, hidden, Activation::Tanh, 1e-3};
}

MlpShape critic_shape(std::size_t state_dim, std::size_t action_dim,
                      std::vector<std::size_t> widths, Activation hidden) {
    return MlpShape{state_dim + action_dim, std::move(widths), 1, hidden, Activation::Linear, 1.0};
}

GradientBundle GradientBundle::zeros_like(const MlpParameters& params) {
    GradientBundle g;
    g.layers.reserve(params.layers.size());
    for (const auto& layer : params.layers) g.layers.emplace_back(layer.in_dim, layer.out_dim);
    g.input_gradient.assign(params.input_dim(), 0.0);
    return g;
}

void GradientBundle::set_zero() {
    for (auto& layer : layers) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
        std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
    }
    std::fill(input_gradient.begin(), input_gradient.end(), 0.0);
}

void GradientBundle::add_scaled(const GradientBundle& other, double scale) {
    if (other.layers.size() != layers.size()) {
        throw std::invalid_argument("GradientBundle::add_scaled: layer count mismatch");
    }
    for (std::size_t k = 0; k < layers.size(); ++k) {
        auto& dst = layers[k];
        const auto& src = other.layers[k];
        if (dst.weights.size() != src.weights.size() || dst.bias.size() != src.bias.size()) {
            throw std::invalid_argument("GradientBundle::add_scaled: shape mismatch");
        }
        for (std::size_t i = 0; i < dst.weights.size(); ++i) dst.weights[i] += scale * src.weights[i];
        for (std::size_t i = 0; i < dst.bias.size(); ++i) dst.bias[i] += scale * src.bias[i];
    }
}

bool GradientBundle::matches(const MlpParameters& params) const noexcept {
    if (layers.size() != params.layers.size()) return false;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& g = layers[k];
        const auto& p = params.layers[k];
        if (g.in_dim != p.in_dim || g.out_dim != p.out_dim ||
            g.weights.size() != p.weights.size() || g.bias.size() != p.bias.size()) {
            return false;
        }
    }
    return true;
}

namespace {

// Four independent partial sums so the compiler can keep several FMAs in flight.
double dot(const double* a, const double* b, std::size_t n) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

} // namespace

std::span<const double> mlp_forward_into(const MlpParameters& params,
                                         std::span<const double> input,
                                         ForwardCache& cache) {
    if (!params.layers.empty() && input.size() != params.input_dim()) {
        throw std::invalid_argument("mlp_forward: input length " + std::to_string(input.size()) +
                                    " != network input dim " +
                                    std::to_string(params.input_dim()));
    }
    const std::size_t n_layers = params.layers.size();
    cache.activations.resize(n_layers + 1);
    cache.pre_activations.resize(n_layers);
    cache.activations[0].assign(input.begin(), input.end());

    for (std::size_t k = 0; k < n_layers; ++k) {
        const auto& layer = params.layers[k];
        const auto act = params.activation_for(k);
        const auto& x = cache.activations[k];
        auto& z = cache.pre_activations[k];
        auto& y = cache.activations[k + 1];
        z.resize(layer.out_dim);
        y.resize(layer.out_dim);
        const double* w = layer.weights.data();
        for (std::size_t r = 0; r < layer.out_dim; ++r) {
            const double sum = layer.bias[r] + dot(w + r * layer.in_dim, x.data(), layer.in_dim);
            z[r] = sum;
            y[r] = activation_value_unchecked(act, sum);
        }
    }
    return cache.activations.back();
}

ForwardResult mlp_forward(const MlpParameters& params, std::span<const double> input) {
    ForwardResult result;
    auto out = mlp_forward_into(params, input, result.cache);
    result.output.assign(out.begin(), out.end());
    return result;
}

std::vector<double> mlp_predict(const MlpParameters& params, std::span<const double> input) {
    ForwardCache cache;
    auto out = mlp_forward_into(params, input, cache);
    return {out.begin(), out.end()};
}

namespace {

void check_cache(const MlpParameters& params, const ForwardCache& cache,
                 std::span<const double> upstream) {
    const std::size_t n_layers = params.layers.size();
    if (cache.activations.size() != n_layers + 1 || cache.pre_activations.size() != n_layers) {
        throw std::invalid_argument("mlp_backward: cache does not match network depth");
    }
    if (n_layers > 0 && upstream.size() != params.output_dim()) {
        throw std::invalid_argument("mlp_backward: upstream length does not match output dim");
    }
    for (std::size_t k = 0; k < n_layers; ++k) {
        if (cache.pre_activations[k].size() != params.layers[k].out_dim ||
            cache.activations[k].size() != params.layers[k].in_dim) {
            throw std::invalid_argument("mlp_backward: cache layer " + std::to_string(k) +
                                        " does not match network");
        }
    }
}

// Shared reverse sweep; parameter gradients are accumulated only when `grads` is set.
std::vector<double> backward_sweep(const MlpParameters& params, const ForwardCache& cache,
                                   std::span<const double> upstream, GradientBundle* grads,
                                   double scale) {
    std::vector<double> delta(upstream.begin(), upstream.end());
    std::vector<double> next;
    for (std::size_t k = params.layers.size(); k-- > 0;) {
        const auto& layer = params.layers[k];
        const auto act = params.activation_for(k);
        const auto& z = cache.pre_activations[k];
        const auto& x = cache.activations[k];
        for (std::size_t r = 0; r < layer.out_dim; ++r) {
            delta[r] *= activation_derivative_unchecked(act, z[r]);
        }

        if (grads != nullptr) {
            auto& grad = grads->layers[k];
            for (std::size_t r = 0; r < layer.out_dim; ++r) {
                const double d = scale * delta[r];
                grad.bias[r] += d;
                double* row = grad.weights.data() + r * layer.in_dim;
                for (std::size_t c = 0; c < layer.in_dim; ++c) row[c] += d * x[c];
            }
        }

        next.assign(layer.in_dim, 0.0);
        for (std::size_t r = 0; r < layer.out_dim; ++r) {
            const double d = delta[r];
            const double* row = layer.weights.data() + r * layer.in_dim;
            for (std::size_t c = 0; c < layer.in_dim; ++c) next[c] += row[c] * d;
        }
        delta.swap(next);
    }
    return delta;
}

} // namespace

std::vector<double> mlp_input_gradient(const MlpParameters& params, const ForwardCache& cache,
                                       std::span<const double> upstream) {
    check_cache(params, cache, upstream);
    return backward_sweep(params, cache, upstream, nullptr, 1.0);
}

void mlp_backward_accumulate(const MlpParameters& params, const ForwardCache& cache,
                             std::span<const double> upstream, GradientBundle& accumulator,
                             double scale) {
    check_cache(params, cache, upstream);
    if (!accumulator.matches(params)) {
        throw std::invalid_argument("mlp_backward: gradient bundle does not match network");
    }
    accumulator.input_gradient = backward_sweep(params, cache, upstream, &accumulator, scale);
}

GradientBundle mlp_backward(const MlpParameters& params, const ForwardCache& cache,
                            std::span<const double> upstream) {
    auto grads = GradientBundle::zeros_like(params);
    mlp_backward_accumulate(params, cache, upstream, grads, 1.0);
    return grads;
}

} // namespace dpg::numerics

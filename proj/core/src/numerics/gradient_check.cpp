#include "dpg/numerics/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpg::numerics {

namespace {

double summed_output(const MlpParameters& params, std::span<const double> input) {
    const auto out = mlp_predict(params, input);
    return std::accumulate(out.begin(), out.end(), 0.0);
}

} // namespace

double relative_error(double analytic, double numeric, double floor) {
    const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
    return std::abs(analytic - numeric) / scale;
}

double gradient_check(const MlpParameters& params, std::span<const double> input, double h,
                      const BackwardFn& backward) {
    if (!(h > 0.0)) throw std::invalid_argument("gradient_check: h must be positive");

    const auto forward = mlp_forward(params, input);
    const std::vector<double> upstream(forward.output.size(), 1.0);
    const auto analytic = backward(params, forward.cache, upstream);
    if (!analytic.matches(params)) {
        throw std::invalid_argument("gradient_check: backward returned mismatched shapes");
    }

    double worst = 0.0;
    MlpParameters probe = params;
    for (std::size_t k = 0; k < probe.layers.size(); ++k) {
        auto check = [&](std::vector<double>& values, const std::vector<double>& grads) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                const double saved = values[i];
                values[i] = saved + h;
                const double plus = summed_output(probe, input);
                values[i] = saved - h;
                const double minus = summed_output(probe, input);
                values[i] = saved;
                worst = std::max(worst, relative_error(grads[i], (plus - minus) / (2.0 * h)));
            }
        };
        check(probe.layers[k].weights, analytic.layers[k].weights);
        check(probe.layers[k].bias, analytic.layers[k].bias);
    }

    if (!params.layers.empty()) {
        std::vector<double> x(input.begin(), input.end());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double saved = x[i];
            x[i] = saved + h;
            const double plus = summed_output(params, x);
            x[i] = saved - h;
            const double minus = summed_output(params, x);
            x[i] = saved;
            const double g = i < analytic.input_gradient.size() ? analytic.input_gradient[i] : 0.0;
            worst = std::max(worst, relative_error(g, (plus - minus) / (2.0 * h)));
        }
    }
    return worst;
}

double gradient_check(const MlpParameters& params, std::span<const double> input, double h) {
    return gradient_check(params, input, h, [](const auto& p, const auto& c, auto u) {
        return mlp_backward(p, c, u);
    });
}

} // namespace dpg::numerics

#pragma once

// Central finite-difference validation of the analytic gradients used by the
// LR and BPNN trainers, evaluated at a seeded random parameter point.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gsmem/classifiers/logistic.hpp"
#include "gsmem/classifiers/neural_net.hpp"

namespace gsmem {

namespace detail {

inline double relative_error(double analytic, double numeric) {
    return std::abs(analytic - numeric) /
           std::max(1e-8, std::abs(analytic) + std::abs(numeric));
}

}  // namespace detail

// Returns max over parameters of the relative error between the analytic
// loss gradient and a central finite difference with step 1e-5.
inline double gradient_check(const TrainConfig& config, const Dataset& train) {
    if (config.algorithm != Algorithm::LR && config.algorithm != Algorithm::BPNN)
        throw std::invalid_argument("gradient_check: only defined for LR and BPNN");
    require_both_classes(train);
    constexpr double step = 1e-5;
    const Scaler scaler = Scaler::fit(train);
    const auto d = detail::scale_dataset(train, scaler);

    double worst = 0.0;
    if (config.algorithm == Algorithm::LR) {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> init(-0.5, 0.5);
        std::array<double, 2> w{init(rng), init(rng)};
        double b = init(rng);
        const auto analytic = logistic_gradient(w, b, d, config.l2);
        for (int k = 0; k < 3; ++k) {
            auto lo_w = w, hi_w = w;
            double lo_b = b, hi_b = b;
            (k < 2 ? hi_w[k] : hi_b) += step;
            (k < 2 ? lo_w[k] : lo_b) -= step;
            const double numeric =
                (logistic_loss(hi_w, hi_b, d, config.l2) - logistic_loss(lo_w, lo_b, d, config.l2)) /
                (2.0 * step);
            worst = std::max(worst, detail::relative_error(analytic[k], numeric));
        }
        return worst;
    }

    NeuralNetModel m = detail::init_neural_net(config.hidden_width, config.seed);
    std::vector<std::size_t> all(d.x.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto analytic = detail::nn_gradient(m, d, all);
    auto params = m.parameters();
    NeuralNetModel probe = m;
    for (std::size_t k = 0; k < params.size(); ++k) {
        auto p = params;
        p[k] = params[k] + step;
        probe.set_parameters(p);
        const double hi = detail::nn_loss(probe, d);
        p[k] = params[k] - step;
        probe.set_parameters(p);
        const double lo = detail::nn_loss(probe, d);
        worst = std::max(worst, detail::relative_error(analytic[k], (hi - lo) / (2.0 * step)));
    }
    return worst;
}

}  // namespace gsmem

#pragma once

// Logistic regression: full-batch gradient descent on mean cross-entropy with
// an L2 penalty on the weights (bias unpenalized), sigmoid link, z-scored
// inputs.

#include <array>
#include <cmath>
#include <vector>

#include "gsmem/classifiers/common.hpp"

namespace gsmem {

struct LogisticModel {
    std::array<double, 2> weights{0.0, 0.0};
    double bias = 0.0;
    Scaler scaler;

    bool operator==(const LogisticModel&) const = default;
};

namespace detail {

struct ScaledData {
    std::vector<std::array<double, 2>> x;
    std::vector<double> y;  // 1 = Attack
};

inline ScaledData scale_dataset(const Dataset& train, const Scaler& scaler) {
    ScaledData d;
    d.x.reserve(train.samples.size());
    d.y.reserve(train.samples.size());
    for (const auto& s : train.samples) {
        d.x.push_back(scaler.apply(s.features));
        d.y.push_back(target_of(s.label));
    }
    return d;
}

}  // namespace detail

// Mean cross-entropy plus 0.5 * l2 * |w|^2. Probabilities are clamped away
// from 0/1 inside the logs only.
inline double logistic_loss(const std::array<double, 2>& w, double b,
                            const detail::ScaledData& d, double l2) {
    constexpr double tiny = 1e-12;
    double loss = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        const double p = sigmoid(w[0] * d.x[i][0] + w[1] * d.x[i][1] + b);
        loss -= d.y[i] * std::log(std::max(p, tiny)) +
                (1.0 - d.y[i]) * std::log(std::max(1.0 - p, tiny));
    }
    loss /= static_cast<double>(d.x.size());
    return loss + 0.5 * l2 * (w[0] * w[0] + w[1] * w[1]);
}

// Analytic gradient of logistic_loss, returned as (dw0, dw1, db).
inline std::array<double, 3> logistic_gradient(const std::array<double, 2>& w, double b,
                                               const detail::ScaledData& d, double l2) {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        const double r = sigmoid(w[0] * d.x[i][0] + w[1] * d.x[i][1] + b) - d.y[i];
        g[0] += r * d.x[i][0];
        g[1] += r * d.x[i][1];
        g[2] += r;
    }
    const double n = static_cast<double>(d.x.size());
    g[0] = g[0] / n + l2 * w[0];
    g[1] = g[1] / n + l2 * w[1];
    g[2] /= n;
    return g;
}

inline LogisticModel train_logistic(const TrainConfig& config, const Dataset& train) {
    validate(config);
    require_both_classes(train);
    LogisticModel m;
    m.scaler = Scaler::fit(train);
    const auto d = detail::scale_dataset(train, m.scaler);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const auto g = logistic_gradient(m.weights, m.bias, d, config.l2);
        m.weights[0] -= config.learning_rate * g[0];
        m.weights[1] -= config.learning_rate * g[1];
        m.bias -= config.learning_rate * g[2];
    }
    return m;
}

inline Prediction predict(const LogisticModel& m, const FeatureVector& fv) {
    check_finite(fv);
    const auto x = m.scaler.apply(fv);
    return make_prediction(sigmoid(m.weights[0] * x[0] + m.weights[1] * x[1] + m.bias));
}

}  // namespace gsmem

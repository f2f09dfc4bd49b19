#pragma once

// Linear SVM: L2-regularized hinge loss minimized by seeded stochastic
// subgradient descent over z-scored inputs. The reported score is the
// logistic-squashed margin, so the 0.5 label rule coincides with the sign of
// the margin.

#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "gsmem/classifiers/common.hpp"

namespace gsmem {

struct LinearSvmModel {
    std::array<double, 2> weights{0.0, 0.0};
    double bias = 0.0;
    Scaler scaler;

    bool operator==(const LinearSvmModel&) const = default;
};

inline LinearSvmModel train_svm(const TrainConfig& config, const Dataset& train) {
    validate(config);
    require_both_classes(train);
    LinearSvmModel m;
    m.scaler = Scaler::fit(train);
    const auto d = detail::scale_dataset(train, m.scaler);
    const std::size_t n = d.x.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(config.seed);
    const double eta = config.learning_rate;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            const double y = d.y[i] > 0.5 ? 1.0 : -1.0;
            const double margin = y * (m.weights[0] * d.x[i][0] + m.weights[1] * d.x[i][1] + m.bias);
            m.weights[0] -= eta * config.l2 * m.weights[0];
            m.weights[1] -= eta * config.l2 * m.weights[1];
            if (margin < 1.0) {
                m.weights[0] += eta * y * d.x[i][0];
                m.weights[1] += eta * y * d.x[i][1];
                m.bias += eta * y;
            }
        }
    }
    return m;
}

inline Prediction predict(const LinearSvmModel& m, const FeatureVector& fv) {
    check_finite(fv);
    const auto x = m.scaler.apply(fv);
    return make_prediction(sigmoid(m.weights[0] * x[0] + m.weights[1] * x[1] + m.bias));
}

}  // namespace gsmem

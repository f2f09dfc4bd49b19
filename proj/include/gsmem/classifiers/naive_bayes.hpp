#pragma once

// Gaussian naive Bayes on raw features: per-class per-feature maximum
// likelihood mean/variance (variance floored), priors from class frequencies.

#include <array>
#include <cmath>

#include "gsmem/classifiers/common.hpp"

namespace gsmem {

struct NaiveBayesModel {
    std::array<double, 2> prior{0.5, 0.5};                     // [benign, attack]
    std::array<std::array<double, 2>, 2> mean{};                // [class][feature]
    std::array<std::array<double, 2>, 2> variance{};            // [class][feature]

    bool operator==(const NaiveBayesModel&) const = default;
};

inline NaiveBayesModel train_naive_bayes(const Dataset& train) {
    require_both_classes(train);
    NaiveBayesModel m;
    const std::array<std::size_t, 2> counts{train.count(Label::Benign),
                                            train.count(Label::Attack)};
    for (int c = 0; c < 2; ++c) {
        m.prior[c] = static_cast<double>(counts[c]) / static_cast<double>(train.samples.size());
        m.mean[c] = {0.0, 0.0};
        m.variance[c] = {0.0, 0.0};
    }
    for (const auto& s : train.samples) {
        const int c = static_cast<int>(s.label);
        m.mean[c][0] += s.features.frequency_hz;
        m.mean[c][1] += s.features.amplitude;
    }
    for (int c = 0; c < 2; ++c)
        for (int f = 0; f < 2; ++f) m.mean[c][f] /= static_cast<double>(counts[c]);
    for (const auto& s : train.samples) {
        const int c = static_cast<int>(s.label);
        const std::array<double, 2> x{s.features.frequency_hz, s.features.amplitude};
        for (int f = 0; f < 2; ++f)
            m.variance[c][f] += (x[f] - m.mean[c][f]) * (x[f] - m.mean[c][f]);
    }
    for (int c = 0; c < 2; ++c)
        for (int f = 0; f < 2; ++f)
            m.variance[c][f] =
                std::max(m.variance[c][f] / static_cast<double>(counts[c]), kVarianceFloor);
    return m;
}

// Normalized class posteriors [benign, attack] via log-sum-exp.
inline std::array<double, 2> posteriors(const NaiveBayesModel& m, const FeatureVector& fv) {
    check_finite(fv);
    const std::array<double, 2> x{fv.frequency_hz, fv.amplitude};
    std::array<double, 2> log_joint{};
    for (int c = 0; c < 2; ++c) {
        double ll = std::log(m.prior[c]);
        for (int f = 0; f < 2; ++f) {
            const double d = x[f] - m.mean[c][f];
            ll -= 0.5 * (std::log(2.0 * M_PI * m.variance[c][f]) + d * d / m.variance[c][f]);
        }
        log_joint[c] = ll;
    }
    const double hi = std::max(log_joint[0], log_joint[1]);
    const double z0 = std::exp(log_joint[0] - hi);
    const double z1 = std::exp(log_joint[1] - hi);
    return {z0 / (z0 + z1), z1 / (z0 + z1)};
}

inline Prediction predict(const NaiveBayesModel& m, const FeatureVector& fv) {
    return make_prediction(posteriors(m, fv)[1]);
}

}  // namespace gsmem

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "gsmem/dataset.hpp"

namespace gsmem {

// The six detector families, plus DT for a standalone CART tree (the building
// block of RF and BT, trainable on its own for comparisons).
enum class Algorithm { LR, RF, SVM, BT, BPNN, NBC, DT };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::LR: return "LR";
        case Algorithm::RF: return "RF";
        case Algorithm::SVM: return "SVM";
        case Algorithm::BT: return "BT";
        case Algorithm::BPNN: return "BPNN";
        case Algorithm::NBC: return "NBC";
        case Algorithm::DT: return "DT";
    }
    throw std::invalid_argument("unknown algorithm tag");
}

inline Algorithm algorithm_from_name(const std::string& name) {
    for (Algorithm a : {Algorithm::LR, Algorithm::RF, Algorithm::SVM, Algorithm::BT,
                        Algorithm::BPNN, Algorithm::NBC, Algorithm::DT})
        if (name == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm tag '" + name + "'");
}

// One flat bag of hyperparameters; each family reads the fields it uses.
struct TrainConfig {
    Algorithm algorithm = Algorithm::LR;
    double learning_rate = 0.1;  // LR, SVM, BPNN
    int epochs = 500;            // LR, SVM, BPNN
    double l2 = 1e-4;            // LR, SVM
    int tree_count = 50;         // RF
    int max_depth = 6;           // DT, RF, BT
    bool bootstrap = true;       // RF
    bool feature_subsample = true;  // RF: 1-of-2 random feature per split
    int rounds = 50;             // BT
    double shrinkage = 0.1;      // BT
    int hidden_width = 8;        // BPNN
    int batch_size = 32;         // BPNN
    std::uint64_t seed = 1;

    bool operator==(const TrainConfig&) const = default;
};

inline void validate(const TrainConfig& c) {
    if (!(c.learning_rate > 0.0)) throw std::invalid_argument("train: learning_rate must be > 0");
    if (c.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (!(c.l2 >= 0.0)) throw std::invalid_argument("train: l2 must be >= 0");
    if (c.tree_count < 1) throw std::invalid_argument("train: tree_count must be >= 1");
    // max_depth 0 is a plain majority leaf; rounds 0 is the constant log-odds model.
    if (c.max_depth < 0) throw std::invalid_argument("train: max_depth must be >= 0");
    if (c.rounds < 0) throw std::invalid_argument("train: rounds must be >= 0");
    if (!(c.shrinkage > 0.0)) throw std::invalid_argument("train: shrinkage must be > 0");
    if (c.hidden_width < 1) throw std::invalid_argument("train: hidden_width must be >= 1");
    if (c.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
}

// Score is the model's probability of Attack; the label rule is fixed at 0.5
// with ties going to Benign.
struct Prediction {
    Label label = Label::Benign;
    double score = 0.0;
};

inline Prediction make_prediction(double score) {
    return {score > 0.5 ? Label::Attack : Label::Benign, score};
}

inline void check_finite(const FeatureVector& fv) {
    if (!std::isfinite(fv.frequency_hz) || !std::isfinite(fv.amplitude))
        throw std::invalid_argument("predict: non-finite feature value");
}

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

constexpr double kVarianceFloor = 1e-9;

// Z-score standardization fitted on the training set; the std of a constant
// feature is floored so scaling stays defined.
struct Scaler {
    std::array<double, 2> mean{0.0, 0.0};
    std::array<double, 2> std_dev{1.0, 1.0};

    bool operator==(const Scaler&) const = default;

    static Scaler fit(const Dataset& train) {
        if (train.samples.empty()) throw std::invalid_argument("scaler: empty training set");
        const double n = static_cast<double>(train.samples.size());
        Scaler s;
        std::array<double, 2> sum{0.0, 0.0};
        for (const auto& sample : train.samples) {
            sum[0] += sample.features.frequency_hz;
            sum[1] += sample.features.amplitude;
        }
        for (int f = 0; f < 2; ++f) s.mean[f] = sum[f] / n;
        std::array<double, 2> sq{0.0, 0.0};
        for (const auto& sample : train.samples) {
            const std::array<double, 2> x{sample.features.frequency_hz,
                                          sample.features.amplitude};
            for (int f = 0; f < 2; ++f) sq[f] += (x[f] - s.mean[f]) * (x[f] - s.mean[f]);
        }
        for (int f = 0; f < 2; ++f)
            s.std_dev[f] = std::max(std::sqrt(sq[f] / n), kVarianceFloor);
        return s;
    }

    std::array<double, 2> apply(const FeatureVector& fv) const {
        return {(fv.frequency_hz - mean[0]) / std_dev[0],
                (fv.amplitude - mean[1]) / std_dev[1]};
    }
};

inline void require_both_classes(const Dataset& train) {
    if (train.count(Label::Benign) == 0 || train.count(Label::Attack) == 0)
        throw TrainingError("training set must contain both classes");
}

// 0/1 target with Attack as the positive class.
inline double target_of(Label l) { return l == Label::Attack ? 1.0 : 0.0; }

}  // namespace gsmem

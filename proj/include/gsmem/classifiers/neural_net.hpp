#pragma once

// Back-propagation network with one sigmoid hidden layer and a sigmoid
// output, trained by seeded mini-batch SGD on mean cross-entropy. Weights are
// initialized uniform in [-0.5, 0.5] from the seed. Inputs are z-scored.

#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "gsmem/classifiers/common.hpp"

namespace gsmem {

struct NeuralNetModel {
    int hidden_width = 8;
    std::vector<double> w1;  // hidden_width x 2, row-major
    std::vector<double> b1;  // hidden_width
    std::vector<double> w2;  // hidden_width
    double b2 = 0.0;
    Scaler scaler;

    bool operator==(const NeuralNetModel&) const = default;

    std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }

    std::vector<double> parameters() const {
        std::vector<double> p;
        p.reserve(parameter_count());
        p.insert(p.end(), w1.begin(), w1.end());
        p.insert(p.end(), b1.begin(), b1.end());
        p.insert(p.end(), w2.begin(), w2.end());
        p.push_back(b2);
        return p;
    }

    void set_parameters(std::span<const double> p) {
        std::size_t k = 0;
        for (auto& v : w1) v = p[k++];
        for (auto& v : b1) v = p[k++];
        for (auto& v : w2) v = p[k++];
        b2 = p[k];
    }
};

namespace detail {

inline double nn_raw_output(const NeuralNetModel& m, const std::array<double, 2>& x) {
    double z2 = m.b2;
    for (int j = 0; j < m.hidden_width; ++j) {
        const double a = sigmoid(m.w1[2 * j] * x[0] + m.w1[2 * j + 1] * x[1] + m.b1[j]);
        z2 += m.w2[j] * a;
    }
    return z2;
}

inline double nn_loss(const NeuralNetModel& m, const ScaledData& d) {
    constexpr double tiny = 1e-12;
    double loss = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        const double p = sigmoid(nn_raw_output(m, d.x[i]));
        loss -= d.y[i] * std::log(std::max(p, tiny)) +
                (1.0 - d.y[i]) * std::log(std::max(1.0 - p, tiny));
    }
    return loss / static_cast<double>(d.x.size());
}

// Backprop gradient of nn_loss over the samples in `idx`, flattened in the
// same layout as NeuralNetModel::parameters().
inline std::vector<double> nn_gradient(const NeuralNetModel& m, const ScaledData& d,
                                       std::span<const std::size_t> idx) {
    const int h = m.hidden_width;
    std::vector<double> g(m.parameter_count(), 0.0);
    std::vector<double> a1(h);
    for (std::size_t i : idx) {
        const auto& x = d.x[i];
        double z2 = m.b2;
        for (int j = 0; j < h; ++j) {
            a1[j] = sigmoid(m.w1[2 * j] * x[0] + m.w1[2 * j + 1] * x[1] + m.b1[j]);
            z2 += m.w2[j] * a1[j];
        }
        const double delta2 = sigmoid(z2) - d.y[i];
        for (int j = 0; j < h; ++j) {
            const double delta1 = delta2 * m.w2[j] * a1[j] * (1.0 - a1[j]);
            g[2 * j] += delta1 * x[0];
            g[2 * j + 1] += delta1 * x[1];
            g[2 * h + j] += delta1;          // b1
            g[3 * h + j] += delta2 * a1[j];  // w2
        }
        g[4 * h] += delta2;  // b2
    }
    const double n = static_cast<double>(idx.size());
    for (auto& v : g) v /= n;
    return g;
}

inline NeuralNetModel init_neural_net(int hidden_width, std::uint64_t seed) {
    NeuralNetModel m;
    m.hidden_width = hidden_width;
    m.w1.resize(static_cast<std::size_t>(hidden_width) * 2);
    m.b1.resize(hidden_width);
    m.w2.resize(hidden_width);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(-0.5, 0.5);
    for (auto& v : m.w1) v = init(rng);
    for (auto& v : m.b1) v = init(rng);
    for (auto& v : m.w2) v = init(rng);
    m.b2 = init(rng);
    return m;
}

}  // namespace detail

inline NeuralNetModel train_neural_net(const TrainConfig& config, const Dataset& train) {
    validate(config);
    require_both_classes(train);
    NeuralNetModel m = detail::init_neural_net(config.hidden_width, config.seed);
    m.scaler = Scaler::fit(train);
    const auto d = detail::scale_dataset(train, m.scaler);
    const std::size_t n = d.x.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(sub_seed(config.seed, 0x5a1d));
    const auto batch = static_cast<std::size_t>(config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t len = std::min(batch, n - start);
            const auto g = detail::nn_gradient(m, d, {order.data() + start, len});
            auto p = m.parameters();
            for (std::size_t k = 0; k < p.size(); ++k) p[k] -= config.learning_rate * g[k];
            m.set_parameters(p);
        }
    }
    return m;
}

inline Prediction predict(const NeuralNetModel& m, const FeatureVector& fv) {
    check_finite(fv);
    return make_prediction(sigmoid(detail::nn_raw_output(m, m.scaler.apply(fv))));
}

}  // namespace gsmem

#pragma once

// Gradient boosting on logistic loss: depth-limited regression trees fitted
// to the negative gradient, Newton leaf values, a constant initial log-odds
// and a shrinkage factor. Each round may only keep a tree that does not
// increase the training loss (leaf values are halved until that holds), so
// the recorded loss curve is non-increasing by construction.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "gsmem/classifiers/common.hpp"
#include "gsmem/classifiers/tree.hpp"

namespace gsmem {

struct RegressionNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf payload

    bool operator==(const RegressionNode&) const = default;
};

struct RegressionTree {
    std::vector<RegressionNode> nodes;

    bool operator==(const RegressionTree&) const = default;
};

struct BoostedTreesModel {
    std::vector<RegressionTree> trees;
    double shrinkage = 0.1;
    double initial_log_odds = 0.0;
    std::vector<double> training_loss;  // loss after 0, 1, ... rounds (diagnostic)

    bool operator==(const BoostedTreesModel&) const = default;
};

namespace detail {

inline double reg_tree_value(const RegressionTree& tree, const FeatureVector& fv) {
    int node = 0;
    while (tree.nodes[node].feature >= 0)
        node = feature_value(fv, tree.nodes[node].feature) < tree.nodes[node].threshold
                   ? tree.nodes[node].left
                   : tree.nodes[node].right;
    return tree.nodes[node].value;
}

// Least-squares split search on the residuals; leaf value is the Newton step
// sum(residual) / sum(hessian).
inline int build_regression_node(const Dataset& data, const std::vector<double>& residual,
                                 const std::vector<double>& hessian,
                                 const std::vector<std::size_t>& idx, int depth, int max_depth,
                                 std::vector<RegressionNode>& nodes) {
    double sum_r = 0.0, sum_h = 0.0;
    for (std::size_t i : idx) {
        sum_r += residual[i];
        sum_h += hessian[i];
    }
    const int me = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[me].value = sum_r / (sum_h + 1e-12);

    if (depth >= max_depth || idx.size() < 2) return me;

    struct Best {
        int feature = -1;
        double threshold = 0.0;
        double score = -std::numeric_limits<double>::infinity();
    } best;
    for (int f = 0; f < 2; ++f) {
        std::vector<std::pair<double, double>> vals;  // (feature value, residual)
        vals.reserve(idx.size());
        for (std::size_t i : idx)
            vals.emplace_back(feature_value(data.samples[i].features, f), residual[i]);
        std::sort(vals.begin(), vals.end());
        double left_sum = 0.0;
        for (std::size_t i = 1; i < vals.size(); ++i) {
            left_sum += vals[i - 1].second;
            if (!(vals[i].first > vals[i - 1].first)) continue;
            const double t = (vals[i - 1].first + vals[i].first) / 2.0;
            if (!(t > vals[i - 1].first)) continue;
            const double right_sum = sum_r - left_sum;
            const double score = left_sum * left_sum / static_cast<double>(i) +
                                 right_sum * right_sum / static_cast<double>(vals.size() - i);
            if (score > best.score) best = {f, t, score};
        }
    }
    const double parent_score = sum_r * sum_r / static_cast<double>(idx.size());
    if (best.feature < 0 || !(best.score > parent_score + 1e-12)) return me;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx)
        (feature_value(data.samples[i].features, best.feature) < best.threshold ? left_idx
                                                                                : right_idx)
            .push_back(i);
    nodes[me].feature = best.feature;
    nodes[me].threshold = best.threshold;
    const int l =
        build_regression_node(data, residual, hessian, left_idx, depth + 1, max_depth, nodes);
    const int r =
        build_regression_node(data, residual, hessian, right_idx, depth + 1, max_depth, nodes);
    nodes[me].left = l;
    nodes[me].right = r;
    return me;
}

inline double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Mean logistic loss of the raw scores F against 0/1 targets.
inline double logistic_loss_of_scores(const std::vector<double>& score,
                                      const std::vector<double>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < score.size(); ++i)
        loss += softplus(y[i] > 0.5 ? -score[i] : score[i]);
    return loss / static_cast<double>(score.size());
}

}  // namespace detail

inline BoostedTreesModel train_boosted_trees(const TrainConfig& config, const Dataset& train) {
    validate(config);
    require_both_classes(train);
    const std::size_t n = train.samples.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = target_of(train.samples[i].label);
    const double attack_fraction =
        std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

    BoostedTreesModel m;
    m.shrinkage = config.shrinkage;
    m.initial_log_odds = std::log(attack_fraction / (1.0 - attack_fraction));

    std::vector<double> score(n, m.initial_log_odds);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    double loss = detail::logistic_loss_of_scores(score, y);
    m.training_loss.push_back(loss);

    std::vector<double> residual(n), hessian(n), tree_out(n), candidate(n);
    for (int round = 0; round < config.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(score[i]);
            residual[i] = y[i] - p;
            hessian[i] = p * (1.0 - p);
        }
        RegressionTree tree;
        detail::build_regression_node(train, residual, hessian, idx, 0, config.max_depth,
                                      tree.nodes);
        for (std::size_t i = 0; i < n; ++i)
            tree_out[i] = detail::reg_tree_value(tree, train.samples[i].features);

        // Newton steps can overshoot on near-pure leaves; halve until the
        // training loss does not increase.
        double scale = 1.0;
        double new_loss = loss;
        for (int attempt = 0; attempt < 50; ++attempt) {
            for (std::size_t i = 0; i < n; ++i)
                candidate[i] = score[i] + m.shrinkage * scale * tree_out[i];
            new_loss = detail::logistic_loss_of_scores(candidate, y);
            if (new_loss <= loss) break;
            scale *= 0.5;
        }
        if (new_loss > loss) {
            scale = 0.0;
            new_loss = loss;
            for (std::size_t i = 0; i < n; ++i) candidate[i] = score[i];
        }
        if (scale != 1.0)
            for (auto& node : tree.nodes) node.value *= scale;
        score = candidate;
        loss = new_loss;
        m.training_loss.push_back(loss);
        m.trees.push_back(std::move(tree));
    }
    return m;
}

inline Prediction predict(const BoostedTreesModel& m, const FeatureVector& fv) {
    check_finite(fv);
    double f = m.initial_log_odds;
    for (const auto& tree : m.trees) f += m.shrinkage * detail::reg_tree_value(tree, fv);
    return make_prediction(sigmoid(f));
}

}  // namespace gsmem

#pragma once

// CART with Gini impurity and axis-aligned splits. Candidate thresholds are
// the midpoints between consecutive distinct sorted feature values; a node
// splits only if the best candidate strictly decreases weighted Gini, with
// ties broken towards the lowest feature index and then the smallest
// threshold. Samples with feature < threshold go left.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "gsmem/classifiers/common.hpp"

namespace gsmem {

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double attack_fraction = 0.0;  // leaf payload

    bool operator==(const TreeNode&) const = default;
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes;  // preorder; root at 0

    bool operator==(const DecisionTreeModel&) const = default;
};

namespace detail {

inline double feature_value(const FeatureVector& fv, int feature) {
    return feature == 0 ? fv.frequency_hz : fv.amplitude;
}

// Gini comparisons are done in exact integer arithmetic so that mathematical
// ties really are ties and the documented tie-break (lowest feature index,
// then smallest threshold) decides them. For a child with m samples of which
// a are attacks, m * gini = (m^2 - a^2 - (m-a)^2) / m; a split's quality is
// the sum of the two child terms (the common 1/n factor cancels).
struct SplitQuality {
    std::int64_t left_num = 0, left_n = 1;    // numerator / denominator
    std::int64_t right_num = 0, right_n = 1;  // right_n 0 marks "no split"
};

inline std::int64_t gini_numerator(std::int64_t attack, std::int64_t total) {
    const std::int64_t benign = total - attack;
    return total * total - attack * attack - benign * benign;
}

inline bool quality_less(const SplitQuality& x, const SplitQuality& y) {
    using wide = __int128;
    const wide lhs = (wide(x.left_num) * x.right_n + wide(x.right_num) * x.left_n) *
                     (wide(y.left_n) * y.right_n);
    const wide rhs = (wide(y.left_num) * y.right_n + wide(y.right_num) * y.left_n) *
                     (wide(x.left_n) * x.right_n);
    return lhs < rhs;
}

// Strict decrease against the unsplit node: sum_children m*gini < n*gini.
inline bool quality_improves(const SplitQuality& x, std::int64_t attack, std::int64_t total) {
    using wide = __int128;
    const wide lhs = (wide(x.left_num) * x.right_n + wide(x.right_num) * x.left_n) * total;
    const wide rhs = wide(gini_numerator(attack, total)) * (wide(x.left_n) * x.right_n);
    return lhs < rhs;
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    SplitQuality quality;
};

// Scans one feature over the node's samples and keeps the best candidate.
// Candidates are visited in ascending threshold order and replace the
// incumbent only on strict improvement, which implements the tie-break.
inline void scan_feature_for_split(const Dataset& data, const std::vector<std::size_t>& idx,
                                   int feature, SplitChoice& best) {
    const std::size_t n = idx.size();
    std::vector<std::pair<double, bool>> vals;  // (value, is_attack), sorted
    vals.reserve(n);
    for (std::size_t i : idx)
        vals.emplace_back(feature_value(data.samples[i].features, feature),
                          data.samples[i].label == Label::Attack);
    std::sort(vals.begin(), vals.end());

    std::int64_t left_n = 0, left_attack = 0;
    std::int64_t total_attack = 0;
    for (const auto& [v, a] : vals) total_attack += a;

    for (std::size_t i = 1; i < n; ++i) {
        left_n += 1;
        left_attack += vals[i - 1].second;
        if (!(vals[i].first > vals[i - 1].first)) continue;  // not distinct
        const double t = (vals[i - 1].first + vals[i].first) / 2.0;
        if (!(t > vals[i - 1].first)) continue;  // no representable midpoint
        const std::int64_t right_n = static_cast<std::int64_t>(n) - left_n;
        const SplitQuality q{gini_numerator(left_attack, left_n), left_n,
                             gini_numerator(total_attack - left_attack, right_n), right_n};
        if (best.feature < 0 || quality_less(q, best.quality)) best = {feature, t, q};
    }
}

// Builds a subtree over data[idx]; returns the node index. When feature_rng
// is set, each split considers a single randomly drawn feature.
inline int build_cart_node(const Dataset& data, const std::vector<std::size_t>& idx,
                           int depth, int max_depth, std::mt19937_64* feature_rng,
                           std::vector<TreeNode>& nodes) {
    std::size_t attack = 0;
    for (std::size_t i : idx) attack += data.samples[i].label == Label::Attack;
    const int me = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[me].attack_fraction = static_cast<double>(attack) / static_cast<double>(idx.size());

    if (depth >= max_depth || idx.size() < 2) return me;

    SplitChoice best;
    if (feature_rng) {
        const int f = static_cast<int>((*feature_rng)() % 2);
        scan_feature_for_split(data, idx, f, best);
    } else {
        scan_feature_for_split(data, idx, 0, best);
        scan_feature_for_split(data, idx, 1, best);
    }
    if (best.feature < 0 ||
        !quality_improves(best.quality, static_cast<std::int64_t>(attack),
                          static_cast<std::int64_t>(idx.size())))
        return me;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx)
        (feature_value(data.samples[i].features, best.feature) < best.threshold ? left_idx
                                                                                : right_idx)
            .push_back(i);
    nodes[me].feature = best.feature;
    nodes[me].threshold = best.threshold;
    const int l = build_cart_node(data, left_idx, depth + 1, max_depth, feature_rng, nodes);
    const int r = build_cart_node(data, right_idx, depth + 1, max_depth, feature_rng, nodes);
    nodes[me].left = l;
    nodes[me].right = r;
    return me;
}

}  // namespace detail

// Trains a CART tree on the full dataset (raw, unscaled features). Used both
// standalone and as the base learner for the forest.
inline DecisionTreeModel train_decision_tree(const TrainConfig& config, const Dataset& train) {
    validate(config);
    if (train.samples.empty()) throw TrainingError("decision tree: empty training set");
    DecisionTreeModel m;
    std::vector<std::size_t> idx(train.samples.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    detail::build_cart_node(train, idx, 0, config.max_depth, nullptr, m.nodes);
    return m;
}

inline int find_leaf(const DecisionTreeModel& m, const FeatureVector& fv) {
    int node = 0;
    while (m.nodes[node].feature >= 0)
        node = detail::feature_value(fv, m.nodes[node].feature) < m.nodes[node].threshold
                   ? m.nodes[node].left
                   : m.nodes[node].right;
    return node;
}

inline Prediction predict(const DecisionTreeModel& m, const FeatureVector& fv) {
    check_finite(fv);
    return make_prediction(m.nodes[find_leaf(m, fv)].attack_fraction);
}

}  // namespace gsmem

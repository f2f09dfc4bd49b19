#pragma once

// Random forest: bagged CART trees with a random 1-of-2 feature choice per
// split, combined by majority vote. Each tree gets a pre-assigned sub-seed of
// the master seed, so results do not depend on training order.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "gsmem/classifiers/tree.hpp"

namespace gsmem {

struct RandomForestModel {
    std::vector<DecisionTreeModel> trees;
    std::vector<std::uint64_t> tree_seeds;

    bool operator==(const RandomForestModel&) const = default;
};

inline RandomForestModel train_random_forest(const TrainConfig& config, const Dataset& train) {
    validate(config);
    require_both_classes(train);
    RandomForestModel m;
    m.trees.reserve(config.tree_count);
    m.tree_seeds.reserve(config.tree_count);
    for (int t = 0; t < config.tree_count; ++t)
        m.tree_seeds.push_back(sub_seed(config.seed, static_cast<std::uint64_t>(t)));

    for (int t = 0; t < config.tree_count; ++t) {
        std::mt19937_64 rng(m.tree_seeds[t]);
        Dataset sample;
        if (config.bootstrap) {
            const std::size_t n = train.samples.size();
            sample.samples.reserve(n);
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (std::size_t i = 0; i < n; ++i)
                sample.samples.push_back(train.samples[pick(rng)]);
        } else {
            sample = train;
        }
        DecisionTreeModel tree;
        std::vector<std::size_t> idx(sample.samples.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        detail::build_cart_node(sample, idx, 0, config.max_depth,
                                config.feature_subsample ? &rng : nullptr, tree.nodes);
        m.trees.push_back(std::move(tree));
    }
    return m;
}

// Score is the fraction of trees voting Attack.
inline Prediction predict(const RandomForestModel& m, const FeatureVector& fv) {
    check_finite(fv);
    std::size_t votes = 0;
    for (const auto& tree : m.trees)
        votes += tree.nodes[find_leaf(tree, fv)].attack_fraction > 0.5;
    return make_prediction(static_cast<double>(votes) / static_cast<double>(m.trees.size()));
}

}  // namespace gsmem

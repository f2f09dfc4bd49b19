#pragma once

// Unified train/predict surface over the classifier families. A Model is a
// tagged variant; train() dispatches on the config's algorithm tag and
// predict() on the variant.

#include <variant>

#include "gsmem/classifiers/boosted_trees.hpp"
#include "gsmem/classifiers/common.hpp"
#include "gsmem/classifiers/forest.hpp"
#include "gsmem/classifiers/gradient_check.hpp"
#include "gsmem/classifiers/logistic.hpp"
#include "gsmem/classifiers/naive_bayes.hpp"
#include "gsmem/classifiers/neural_net.hpp"
#include "gsmem/classifiers/svm.hpp"
#include "gsmem/classifiers/tree.hpp"

namespace gsmem {

using Model = std::variant<LogisticModel, NaiveBayesModel, LinearSvmModel, DecisionTreeModel,
                           RandomForestModel, BoostedTreesModel, NeuralNetModel>;

inline Model train(const TrainConfig& config, const Dataset& train_set) {
    validate(config);
    require_both_classes(train_set);
    switch (config.algorithm) {
        case Algorithm::LR: return train_logistic(config, train_set);
        case Algorithm::NBC: return train_naive_bayes(train_set);
        case Algorithm::SVM: return train_svm(config, train_set);
        case Algorithm::DT: return train_decision_tree(config, train_set);
        case Algorithm::RF: return train_random_forest(config, train_set);
        case Algorithm::BT: return train_boosted_trees(config, train_set);
        case Algorithm::BPNN: return train_neural_net(config, train_set);
    }
    throw std::invalid_argument("train: unknown algorithm tag");
}

inline Prediction predict(const Model& model, const FeatureVector& fv) {
    return std::visit([&](const auto& m) { return predict(m, fv); }, model);
}

inline Algorithm model_algorithm(const Model& model) {
    struct Tag {
        Algorithm operator()(const LogisticModel&) const { return Algorithm::LR; }
        Algorithm operator()(const NaiveBayesModel&) const { return Algorithm::NBC; }
        Algorithm operator()(const LinearSvmModel&) const { return Algorithm::SVM; }
        Algorithm operator()(const DecisionTreeModel&) const { return Algorithm::DT; }
        Algorithm operator()(const RandomForestModel&) const { return Algorithm::RF; }
        Algorithm operator()(const BoostedTreesModel&) const { return Algorithm::BT; }
        Algorithm operator()(const NeuralNetModel&) const { return Algorithm::BPNN; }
    };
    return std::visit(Tag{}, model);
}

}  // namespace gsmem

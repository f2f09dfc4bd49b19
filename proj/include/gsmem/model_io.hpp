#pragma once

// Model persistence: one self-describing JSON document per model, holding the
// algorithm tag, the training configuration, the scaler where the family uses
// one, and every learned parameter. Numbers round-trip exactly, so a loaded
// model reproduces the saved model's predictions bit for bit.

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "gsmem/classifiers.hpp"
#include "gsmem/common.hpp"

namespace gsmem {

namespace detail {

using json = nlohmann::json;

inline json to_json(const Scaler& s) {
    return {{"mean", s.mean}, {"std", s.std_dev}};
}

inline Scaler scaler_from_json(const json& j) {
    Scaler s;
    s.mean = j.at("mean");
    s.std_dev = j.at("std");
    return s;
}

inline json to_json(const TrainConfig& c) {
    return {{"algorithm", algorithm_name(c.algorithm)},
            {"learning_rate", c.learning_rate},
            {"epochs", c.epochs},
            {"l2", c.l2},
            {"tree_count", c.tree_count},
            {"max_depth", c.max_depth},
            {"bootstrap", c.bootstrap},
            {"feature_subsample", c.feature_subsample},
            {"rounds", c.rounds},
            {"shrinkage", c.shrinkage},
            {"hidden_width", c.hidden_width},
            {"batch_size", c.batch_size},
            {"seed", c.seed}};
}

inline TrainConfig train_config_from_json(const json& j) {
    TrainConfig c;
    c.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
    c.learning_rate = j.at("learning_rate");
    c.epochs = j.at("epochs");
    c.l2 = j.at("l2");
    c.tree_count = j.at("tree_count");
    c.max_depth = j.at("max_depth");
    c.bootstrap = j.at("bootstrap");
    c.feature_subsample = j.at("feature_subsample");
    c.rounds = j.at("rounds");
    c.shrinkage = j.at("shrinkage");
    c.hidden_width = j.at("hidden_width");
    c.batch_size = j.at("batch_size");
    c.seed = j.at("seed");
    return c;
}

inline json tree_nodes_to_json(const std::vector<TreeNode>& nodes) {
    json arr = json::array();
    for (const auto& n : nodes)
        arr.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"attack_fraction", n.attack_fraction}});
    return arr;
}

inline std::vector<TreeNode> tree_nodes_from_json(const json& arr) {
    std::vector<TreeNode> nodes;
    nodes.reserve(arr.size());
    for (const auto& j : arr) {
        TreeNode n;
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
        n.attack_fraction = j.at("attack_fraction").get<double>();
        nodes.push_back(n);
    }
    return nodes;
}

inline json reg_nodes_to_json(const std::vector<RegressionNode>& nodes) {
    json arr = json::array();
    for (const auto& n : nodes)
        arr.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value}});
    return arr;
}

inline std::vector<RegressionNode> reg_nodes_from_json(const json& arr) {
    std::vector<RegressionNode> nodes;
    nodes.reserve(arr.size());
    for (const auto& j : arr) {
        RegressionNode n;
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
        n.value = j.at("value").get<double>();
        nodes.push_back(n);
    }
    return nodes;
}

struct ParamsWriter {
    json operator()(const LogisticModel& m) const {
        return {{"weights", m.weights}, {"bias", m.bias}, {"scaler", to_json(m.scaler)}};
    }
    json operator()(const LinearSvmModel& m) const {
        return {{"weights", m.weights}, {"bias", m.bias}, {"scaler", to_json(m.scaler)}};
    }
    json operator()(const NaiveBayesModel& m) const {
        return {{"prior", m.prior}, {"mean", m.mean}, {"variance", m.variance}};
    }
    json operator()(const DecisionTreeModel& m) const {
        return {{"nodes", tree_nodes_to_json(m.nodes)}};
    }
    json operator()(const RandomForestModel& m) const {
        json trees = json::array();
        for (const auto& t : m.trees) trees.push_back(tree_nodes_to_json(t.nodes));
        return {{"trees", trees}, {"tree_seeds", m.tree_seeds}};
    }
    json operator()(const BoostedTreesModel& m) const {
        json trees = json::array();
        for (const auto& t : m.trees) trees.push_back(reg_nodes_to_json(t.nodes));
        return {{"trees", trees},
                {"shrinkage", m.shrinkage},
                {"initial_log_odds", m.initial_log_odds},
                {"training_loss", m.training_loss}};
    }
    json operator()(const NeuralNetModel& m) const {
        return {{"hidden_width", m.hidden_width},
                {"w1", m.w1},
                {"b1", m.b1},
                {"w2", m.w2},
                {"b2", m.b2},
                {"scaler", to_json(m.scaler)}};
    }
};

inline Model model_from_json(Algorithm algorithm, const json& p) {
    switch (algorithm) {
        case Algorithm::LR: {
            LogisticModel m;
            m.weights = p.at("weights");
            m.bias = p.at("bias");
            m.scaler = scaler_from_json(p.at("scaler"));
            return m;
        }
        case Algorithm::SVM: {
            LinearSvmModel m;
            m.weights = p.at("weights");
            m.bias = p.at("bias");
            m.scaler = scaler_from_json(p.at("scaler"));
            return m;
        }
        case Algorithm::NBC: {
            NaiveBayesModel m;
            m.prior = p.at("prior");
            m.mean = p.at("mean");
            m.variance = p.at("variance");
            return m;
        }
        case Algorithm::DT: {
            DecisionTreeModel m;
            m.nodes = tree_nodes_from_json(p.at("nodes"));
            return m;
        }
        case Algorithm::RF: {
            RandomForestModel m;
            for (const auto& t : p.at("trees")) m.trees.push_back({tree_nodes_from_json(t)});
            m.tree_seeds = p.at("tree_seeds").get<std::vector<std::uint64_t>>();
            return m;
        }
        case Algorithm::BT: {
            BoostedTreesModel m;
            for (const auto& t : p.at("trees")) m.trees.push_back({reg_nodes_from_json(t)});
            m.shrinkage = p.at("shrinkage");
            m.initial_log_odds = p.at("initial_log_odds");
            m.training_loss = p.at("training_loss").get<std::vector<double>>();
            return m;
        }
        case Algorithm::BPNN: {
            NeuralNetModel m;
            m.hidden_width = p.at("hidden_width");
            m.w1 = p.at("w1").get<std::vector<double>>();
            m.b1 = p.at("b1").get<std::vector<double>>();
            m.w2 = p.at("w2").get<std::vector<double>>();
            m.b2 = p.at("b2");
            m.scaler = scaler_from_json(p.at("scaler"));
            return m;
        }
    }
    throw ParseError("model: unknown algorithm tag");
}

}  // namespace detail

inline std::string serialize_model(const Model& model, const TrainConfig& config) {
    detail::json doc{{"format", "gsmem-model"},
                     {"algorithm", algorithm_name(model_algorithm(model))},
                     {"config", detail::to_json(config)},
                     {"params", std::visit(detail::ParamsWriter{}, model)}};
    return doc.dump(2) + "\n";
}

inline void save_model(const std::string& path, const Model& model, const TrainConfig& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << serialize_model(model, config);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

inline std::pair<Model, TrainConfig> deserialize_model(const std::string& text) {
    try {
        const auto doc = detail::json::parse(text);
        if (doc.value("format", "") != "gsmem-model")
            throw ParseError("model: not a gsmem-model document");
        const auto algorithm = algorithm_from_name(doc.at("algorithm").get<std::string>());
        return {detail::model_from_json(algorithm, doc.at("params")),
                detail::train_config_from_json(doc.at("config"))};
    } catch (const detail::json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
}

inline std::pair<Model, TrainConfig> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(text);
}

}  // namespace gsmem

#pragma once

// Run configuration: one JSON document holding the modulation, noise and
// generator settings, per-algorithm hyperparameter grids, split fraction,
// master seed and output directory. Missing fields fall back to the built-in
// defaults; unknown keys are rejected so typos do not silently change runs.

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsmem/classifiers.hpp"
#include "gsmem/dataset.hpp"

namespace gsmem {

struct RunConfig {
    ModulationConfig modulation;
    NoiseModel noise;
    GeneratorConfig generator;  // attack_* and seed kept in sync below
    double split_fraction = 0.7;
    std::uint64_t seed = 42;
    std::string output_dir = "out";
    std::map<Algorithm, std::vector<TrainConfig>> grids;  // defaults if absent
};

// The paper's roster order; comparison reports keep it.
inline const std::vector<Algorithm>& default_algorithms() {
    static const std::vector<Algorithm> order{Algorithm::LR,  Algorithm::RF, Algorithm::SVM,
                                              Algorithm::BT,  Algorithm::BPNN, Algorithm::NBC};
    return order;
}

inline std::map<Algorithm, std::vector<TrainConfig>> default_grids() {
    std::map<Algorithm, std::vector<TrainConfig>> grids;
    auto base = [](Algorithm a) {
        TrainConfig c;
        c.algorithm = a;
        return c;
    };
    for (double lr : {0.1, 0.5})
        for (double l2 : {0.0, 1e-4}) {
            TrainConfig c = base(Algorithm::LR);
            c.learning_rate = lr;
            c.l2 = l2;
            c.epochs = 300;
            grids[Algorithm::LR].push_back(c);
        }
    for (double lr : {0.01, 0.1})
        for (double l2 : {1e-4, 1e-2}) {
            TrainConfig c = base(Algorithm::SVM);
            c.learning_rate = lr;
            c.l2 = l2;
            c.epochs = 200;
            grids[Algorithm::SVM].push_back(c);
        }
    for (int trees : {25, 50})
        for (int depth : {4, 8}) {
            TrainConfig c = base(Algorithm::RF);
            c.tree_count = trees;
            c.max_depth = depth;
            grids[Algorithm::RF].push_back(c);
        }
    for (int rounds : {30, 50})
        for (double shrinkage : {0.1, 0.3}) {
            TrainConfig c = base(Algorithm::BT);
            c.rounds = rounds;
            c.shrinkage = shrinkage;
            c.max_depth = 3;
            grids[Algorithm::BT].push_back(c);
        }
    for (double lr : {0.1, 0.5}) {
        TrainConfig c = base(Algorithm::BPNN);
        c.learning_rate = lr;
        c.epochs = 300;
        grids[Algorithm::BPNN].push_back(c);
    }
    grids[Algorithm::NBC].push_back(base(Algorithm::NBC));
    return grids;
}

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("config: unknown key '" + key + "' in " + where);
    }
}

template <typename T>
inline void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

inline ModulationConfig modulation_from_json(const json& j, ModulationConfig c) {
    reject_unknown_keys(j,
                        {"carrier_frequency_hz", "bit_duration_s", "sample_rate_hz",
                         "amplitude_high", "amplitude_low", "channel_count", "per_channel_gain"},
                        "modulation");
    read_field(j, "carrier_frequency_hz", c.carrier_frequency_hz);
    read_field(j, "bit_duration_s", c.bit_duration_s);
    read_field(j, "sample_rate_hz", c.sample_rate_hz);
    read_field(j, "amplitude_high", c.amplitude_high);
    read_field(j, "amplitude_low", c.amplitude_low);
    read_field(j, "channel_count", c.channel_count);
    read_field(j, "per_channel_gain", c.per_channel_gain);
    return c;
}

inline NoiseModel noise_from_json(const json& j, NoiseModel n) {
    reject_unknown_keys(j, {"amplitude_sigma", "frequency_jitter_sigma_hz"}, "noise");
    read_field(j, "amplitude_sigma", n.amplitude_sigma);
    read_field(j, "frequency_jitter_sigma_hz", n.frequency_jitter_sigma_hz);
    return n;
}

inline GeneratorConfig generator_from_json(const json& j, GeneratorConfig g) {
    reject_unknown_keys(j,
                        {"n_benign", "n_attack", "benign_frequency_min_hz",
                         "benign_frequency_max_hz", "benign_amplitude_mean",
                         "benign_amplitude_std", "payload_bytes"},
                        "generator");
    read_field(j, "n_benign", g.n_benign);
    read_field(j, "n_attack", g.n_attack);
    read_field(j, "benign_frequency_min_hz", g.benign_frequency_min_hz);
    read_field(j, "benign_frequency_max_hz", g.benign_frequency_max_hz);
    read_field(j, "benign_amplitude_mean", g.benign_amplitude_mean);
    read_field(j, "benign_amplitude_std", g.benign_amplitude_std);
    read_field(j, "payload_bytes", g.payload_bytes);
    return g;
}

inline TrainConfig train_config_from_partial_json(const json& j, Algorithm algorithm) {
    TrainConfig c;
    c.algorithm = algorithm;
    if (algorithm == Algorithm::BT) c.max_depth = 3;
    reject_unknown_keys(j,
                        {"learning_rate", "epochs", "l2", "tree_count", "max_depth", "bootstrap",
                         "feature_subsample", "rounds", "shrinkage", "hidden_width", "batch_size",
                         "seed"},
                        std::string("grid entry for ") + algorithm_name(algorithm));
    read_field(j, "learning_rate", c.learning_rate);
    read_field(j, "epochs", c.epochs);
    read_field(j, "l2", c.l2);
    read_field(j, "tree_count", c.tree_count);
    read_field(j, "max_depth", c.max_depth);
    read_field(j, "bootstrap", c.bootstrap);
    read_field(j, "feature_subsample", c.feature_subsample);
    read_field(j, "rounds", c.rounds);
    read_field(j, "shrinkage", c.shrinkage);
    read_field(j, "hidden_width", c.hidden_width);
    read_field(j, "batch_size", c.batch_size);
    read_field(j, "seed", c.seed);
    validate(c);
    return c;
}

}  // namespace detail

inline RunConfig run_config_from_json(const detail::json& doc) {
    RunConfig rc;
    detail::reject_unknown_keys(
        doc, {"modulation", "noise", "generator", "split_fraction", "seed", "output_dir", "grids"},
        "run config");
    if (doc.contains("modulation"))
        rc.modulation = detail::modulation_from_json(doc.at("modulation"), rc.modulation);
    if (doc.contains("noise")) rc.noise = detail::noise_from_json(doc.at("noise"), rc.noise);
    if (doc.contains("generator"))
        rc.generator = detail::generator_from_json(doc.at("generator"), rc.generator);
    detail::read_field(doc, "split_fraction", rc.split_fraction);
    detail::read_field(doc, "seed", rc.seed);
    detail::read_field(doc, "output_dir", rc.output_dir);
    if (doc.contains("grids")) {
        for (const auto& [name, entries] : doc.at("grids").items()) {
            const Algorithm a = algorithm_from_name(name);
            std::vector<TrainConfig> grid;
            for (const auto& entry : entries)
                grid.push_back(detail::train_config_from_partial_json(entry, a));
            if (grid.empty())
                throw ParseError("config: empty grid for " + name);
            rc.grids[a] = std::move(grid);
        }
    }
    for (const auto& [a, grid] : default_grids())
        if (rc.grids.find(a) == rc.grids.end()) rc.grids[a] = grid;

    rc.generator.attack_modulation = rc.modulation;
    rc.generator.attack_noise = rc.noise;
    rc.generator.seed = rc.seed;
    validate(rc.modulation);
    validate(rc.noise);
    validate(rc.generator);
    if (!(rc.split_fraction > 0.0 && rc.split_fraction < 1.0))
        throw ParseError("config: split_fraction must be in (0, 1)");
    return rc;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    try {
        return run_config_from_json(detail::json::parse(in));
    } catch (const detail::json::exception& e) {
        throw ParseError("config file " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError("config file " + path + ": " + e.what());
    }
}

}  // namespace gsmem

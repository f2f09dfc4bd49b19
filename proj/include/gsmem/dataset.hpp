#pragma once

// Labeled (frequency, amplitude) samples for the detector: feature extraction
// from emission traces, seeded benign/attack generators standing in for real
// spectrum captures, stratified splitting, and CSV persistence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsmem/channel.hpp"
#include "gsmem/common.hpp"
#include "gsmem/trace_io.hpp"

namespace gsmem {

struct FeatureVector {
    double frequency_hz = 0.0;
    double amplitude = 0.0;

    bool operator==(const FeatureVector&) const = default;
};

// Attack is the positive class everywhere (FPR/FNR, scores, confusion counts).
enum class Label : std::uint8_t { Benign = 0, Attack = 1 };

inline const char* label_text(Label l) { return l == Label::Attack ? "attack" : "benign"; }

struct LabeledSample {
    FeatureVector features;
    Label label = Label::Benign;

    bool operator==(const LabeledSample&) const = default;
};

struct Dataset {
    std::vector<LabeledSample> samples;

    bool operator==(const Dataset&) const = default;
    std::size_t count(Label l) const {
        return static_cast<std::size_t>(std::count_if(
            samples.begin(), samples.end(), [&](const auto& s) { return s.label == l; }));
    }
};

struct GeneratorConfig {
    std::size_t n_benign = 1000;
    std::size_t n_attack = 1000;
    // Benign background: broadband low-amplitude noise floor.
    double benign_frequency_min_hz = 800e6;
    double benign_frequency_max_hz = 900e6;
    double benign_amplitude_mean = 1.0;
    double benign_amplitude_std = 0.25;
    // Attack samples come out of the simulated transmitter chain.
    ModulationConfig attack_modulation;
    NoiseModel attack_noise;
    std::size_t payload_bytes = 16;  // bits drawn per simulated transmission
    std::uint64_t seed = 42;
};

inline void validate(const GeneratorConfig& c) {
    if (!(c.benign_frequency_min_hz < c.benign_frequency_max_hz))
        throw std::invalid_argument("generator: benign frequency range is empty");
    if (!(c.benign_amplitude_std >= 0.0))
        throw std::invalid_argument("generator: benign_amplitude_std must be >= 0");
    if (c.payload_bytes < 1)
        throw std::invalid_argument("generator: payload_bytes must be >= 1");
    validate(c.attack_modulation);
    validate(c.attack_noise);
}

// Partitions the trace into consecutive windows of `window` samples (final
// partial window dropped) and emits per-window (mean frequency, mean
// amplitude). An empty trace yields an empty result.
inline std::vector<FeatureVector> extract_features(const EmissionTrace& trace,
                                                   std::size_t window) {
    if (window < 1) throw std::invalid_argument("extract_features: window must be >= 1");
    std::vector<FeatureVector> out;
    out.reserve(trace.samples.size() / window);
    for (std::size_t i = 0; i + window <= trace.samples.size(); i += window) {
        double freq = 0.0, amp = 0.0;
        for (std::size_t k = 0; k < window; ++k) {
            freq += trace.samples[i + k].frequency_hz;
            amp += trace.samples[i + k].amplitude;
        }
        out.push_back({freq / window, amp / window});
    }
    return out;
}

inline std::vector<LabeledSample> generate_benign(const GeneratorConfig& config) {
    validate(config);
    std::mt19937_64 rng(sub_seed(config.seed, 0));
    std::uniform_real_distribution<double> freq(config.benign_frequency_min_hz,
                                                config.benign_frequency_max_hz);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::vector<LabeledSample> out;
    out.reserve(config.n_benign);
    for (std::size_t i = 0; i < config.n_benign; ++i) {
        double f = freq(rng);
        double a = config.benign_amplitude_mean + config.benign_amplitude_std * unit(rng);
        out.push_back({{f, std::max(0.0, a)}, Label::Benign});
    }
    return out;
}

// Draws random payloads and runs them through modulate -> amplify ->
// apply_noise -> extract_features (window = one bit period) until n_attack
// feature vectors have been produced.
inline std::vector<LabeledSample> generate_attack(const GeneratorConfig& config) {
    validate(config);
    std::mt19937_64 rng(sub_seed(config.seed, 1));
    const std::size_t window = samples_per_bit(config.attack_modulation);
    std::vector<LabeledSample> out;
    out.reserve(config.n_attack);
    while (out.size() < config.n_attack) {
        std::vector<std::uint8_t> bytes(config.payload_bytes);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng() & 0xff);
        const std::uint64_t noise_seed = rng();
        EmissionTrace trace = apply_noise(
            amplify(modulate(encode_payload(bytes), config.attack_modulation),
                    config.attack_modulation),
            config.attack_noise, noise_seed);
        for (const auto& fv : extract_features(trace, window)) {
            if (out.size() == config.n_attack) break;
            out.push_back({fv, Label::Attack});
        }
    }
    return out;
}

// Full generated dataset: benign block first, then attack block.
inline Dataset generate_dataset(const GeneratorConfig& config) {
    Dataset d;
    auto benign = generate_benign(config);
    auto attack = generate_attack(config);
    d.samples.reserve(benign.size() + attack.size());
    d.samples.insert(d.samples.end(), benign.begin(), benign.end());
    d.samples.insert(d.samples.end(), attack.begin(), attack.end());
    return d;
}

// Stratified random split: per class, round(train_fraction * count) samples
// go to the training set. Every class must have at least 2 samples.
inline std::pair<Dataset, Dataset> stratified_split(const Dataset& dataset,
                                                    double train_fraction,
                                                    std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split: train_fraction must be in (0, 1)");
    Dataset train, test;
    for (Label label : {Label::Benign, Label::Attack}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < dataset.samples.size(); ++i)
            if (dataset.samples[i].label == label) idx.push_back(i);
        if (idx.size() < 2)
            throw std::runtime_error(std::string("split: class '") + label_text(label) +
                                     "' has fewer than 2 samples");
        std::mt19937_64 rng(sub_seed(seed, static_cast<std::uint64_t>(label)));
        std::shuffle(idx.begin(), idx.end(), rng);
        const auto k = static_cast<std::size_t>(
            std::llround(train_fraction * static_cast<double>(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < k ? train : test).samples.push_back(dataset.samples[idx[i]]);
    }
    return {std::move(train), std::move(test)};
}

inline constexpr const char* kDatasetCsvHeader = "frequency_hz,amplitude,label";

inline void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
    out << kDatasetCsvHeader << '\n';
    for (const auto& s : dataset.samples)
        out << format_double(s.features.frequency_hz) << ','
            << format_double(s.features.amplitude) << ',' << label_text(s.label) << '\n';
}

inline void write_dataset_csv(const std::string& path, const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_dataset_csv(out, dataset);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

inline Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    std::size_t row = 1;
    if (!std::getline(in, line) || line != kDatasetCsvHeader)
        throw ParseError("bad or missing dataset CSV header", row);
    Dataset d;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto f = detail::split_csv_row(line, 3, row);
        Label label;
        if (f[2] == "benign")
            label = Label::Benign;
        else if (f[2] == "attack")
            label = Label::Attack;
        else
            throw ParseError("unknown label '" + f[2] + "'", row);
        d.samples.push_back({{detail::parse_csv_double(f[0], row),
                              detail::parse_csv_double(f[1], row)},
                             label});
    }
    return d;
}

inline Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_dataset_csv(in);
}

}  // namespace gsmem

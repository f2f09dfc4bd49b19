#pragma once

// Detection metrics and the per-algorithm comparison harness: confusion
// counts with Attack as the positive class, FPR/FNR/accuracy (undefined when
// the denominator is empty, never zeroed), grid search minimizing fnr + fpr,
// and a multi-algorithm comparison over one shared stratified split.

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsmem/classifiers.hpp"
#include "gsmem/common.hpp"
#include "gsmem/dataset.hpp"

namespace gsmem {

struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricsReport {
    std::optional<double> fpr;       // fp / (fp + tn)
    std::optional<double> fnr;       // fn / (fn + tp)
    std::optional<double> accuracy;  // (tp + tn) / total

    bool operator==(const MetricsReport&) const = default;
};

inline ConfusionMatrix confusion(const std::vector<Label>& predictions,
                                 const std::vector<Label>& truth) {
    if (predictions.empty() || predictions.size() != truth.size())
        throw std::invalid_argument("confusion: need equal non-zero prediction/truth counts");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pred_attack = predictions[i] == Label::Attack;
        const bool is_attack = truth[i] == Label::Attack;
        if (pred_attack && is_attack) ++m.tp;
        else if (pred_attack && !is_attack) ++m.fp;
        else if (!pred_attack && is_attack) ++m.fn;
        else ++m.tn;
    }
    return m;
}

inline MetricsReport metrics(const ConfusionMatrix& m) {
    MetricsReport r;
    if (m.fp + m.tn > 0) r.fpr = static_cast<double>(m.fp) / static_cast<double>(m.fp + m.tn);
    if (m.fn + m.tp > 0) r.fnr = static_cast<double>(m.fn) / static_cast<double>(m.fn + m.tp);
    if (m.total() > 0)
        r.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
    return r;
}

inline MetricsReport evaluate(const Model& model, const Dataset& test) {
    std::vector<Label> predictions, truth;
    predictions.reserve(test.samples.size());
    truth.reserve(test.samples.size());
    for (const auto& s : test.samples) {
        predictions.push_back(predict(model, s.features).label);
        truth.push_back(s.label);
    }
    return metrics(confusion(predictions, truth));
}

struct GridSearchResult {
    Model model;
    MetricsReport metrics;
    TrainConfig config;
    std::size_t config_index = 0;  // position in the grid
};

namespace detail {

// Selection objective; undefined rates push a config behind every defined one.
inline double fnr_fpr_sum(const MetricsReport& r) {
    if (!r.fnr || !r.fpr) return std::numeric_limits<double>::infinity();
    return *r.fnr + *r.fpr;
}

}  // namespace detail

// Trains every config in the grid on `train_set`, evaluates on `test_set`,
// and returns the config minimizing fnr + fpr; ties break towards lower fnr,
// then earlier grid position.
inline GridSearchResult grid_search(Algorithm algorithm, const std::vector<TrainConfig>& grid,
                                    const Dataset& train_set, const Dataset& test_set) {
    if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
    for (const auto& c : grid)
        if (c.algorithm != algorithm)
            throw std::invalid_argument("grid_search: grid entry tagged " +
                                        std::string(algorithm_name(c.algorithm)) + ", expected " +
                                        algorithm_name(algorithm));
    GridSearchResult best;
    bool have_best = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Model model = train(grid[i], train_set);
        const MetricsReport m = evaluate(model, test_set);
        const double sum = detail::fnr_fpr_sum(m);
        const double best_sum = have_best ? detail::fnr_fpr_sum(best.metrics)
                                          : std::numeric_limits<double>::infinity();
        const bool better =
            !have_best || sum < best_sum ||
            (sum == best_sum && m.fnr && best.metrics.fnr && *m.fnr < *best.metrics.fnr);
        if (better) {
            best = {std::move(model), m, grid[i], i};
            have_best = true;
        }
    }
    return best;
}

struct ComparisonEntry {
    Algorithm algorithm = Algorithm::LR;
    MetricsReport best;
    TrainConfig winning_config;
    std::size_t config_index = 0;
    std::size_t grid_size = 0;
    double train_seconds = 0.0;  // filled only when timing is requested
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;  // one per requested algorithm
    std::uint64_t split_hash = 0;          // audit: all entries saw this split
    std::size_t train_count = 0;
    std::size_t test_count = 0;
};

namespace detail {

inline std::uint64_t hash_split(const Dataset& train_set, const Dataset& test_set) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const Dataset& d, std::uint8_t tag) {
        h = fnv1a64(&tag, 1, h);
        for (const auto& s : d.samples) {
            h = fnv1a64(&s.features.frequency_hz, sizeof(double), h);
            h = fnv1a64(&s.features.amplitude, sizeof(double), h);
            const std::uint8_t l = static_cast<std::uint8_t>(s.label);
            h = fnv1a64(&l, 1, h);
        }
    };
    mix(train_set, 0);
    mix(test_set, 1);
    return h;
}

}  // namespace detail

// One stratified split, then a grid search per requested algorithm on the
// identical train/test partition. Wall-clock timing is opt-in so that
// repeated runs produce identical reports.
inline ComparisonReport compare_all(const std::vector<Algorithm>& algorithms,
                                    const std::map<Algorithm, std::vector<TrainConfig>>& grids,
                                    const Dataset& data, double split_fraction,
                                    std::uint64_t seed, bool measure_time = false) {
    for (Algorithm a : algorithms)
        if (grids.find(a) == grids.end())
            throw std::invalid_argument(std::string("compare_all: no grid for ") +
                                        algorithm_name(a));
    const auto [train_set, test_set] = stratified_split(data, split_fraction, seed);
    ComparisonReport report;
    report.split_hash = detail::hash_split(train_set, test_set);
    report.train_count = train_set.samples.size();
    report.test_count = test_set.samples.size();
    for (Algorithm a : algorithms) {
        const auto& grid = grids.at(a);
        const auto start = std::chrono::steady_clock::now();
        GridSearchResult r = grid_search(a, grid, train_set, test_set);
        const auto stop = std::chrono::steady_clock::now();
        ComparisonEntry entry;
        entry.algorithm = a;
        entry.best = r.metrics;
        entry.winning_config = r.config;
        entry.config_index = r.config_index;
        entry.grid_size = grid.size();
        if (measure_time)
            entry.train_seconds = std::chrono::duration<double>(stop - start).count();
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace gsmem

// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//   1 channel round-trip identity under zero noise
//   2 empirical BER matches the Gaussian tail and is monotone in sigma
//   3 LR / BPNN gradient checks against central finite differences
//   4 CART equals brute-force enumeration on tiny datasets
//   5 degenerate-model equivalences (RF/DT, BT loss, NBC posteriors)
//   6 all six detectors reach FPR <= 0.05 and FNR <= 0.05 on the default data
//   7 `compare` reruns are byte-identical

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "gsmem/channel.hpp"
#include "gsmem/classifiers.hpp"
#include "gsmem/dataset.hpp"
#include "gsmem/eval.hpp"
#include "gsmem/report.hpp"
#include "gsmem/run_config.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace gsmem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail, double seconds) {
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] criterion %d: %s (%.2f s)",
                  pass ? "PASS" : "FAIL", criterion, detail.c_str(), seconds);
    std::cout << line << std::endl;
    if (!pass) ++failures;
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- 1: round-trip identity ------------------------------------------------

void criterion_round_trip() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> length(8, 256);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::size_t ok = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Payload p;
        const std::size_t n = length(rng);
        for (std::size_t i = 0; i < n; ++i) p.bits.push_back(rng() & 1u);

        ModulationConfig c;
        c.carrier_frequency_hz = 1e6 + uni(rng) * 2e9;
        c.sample_rate_hz = 1.0 + uni(rng) * 20000.0;
        c.bit_duration_s = (1.0 + uni(rng) * 9.0) / c.sample_rate_hz;  // 1..10 samples/bit
        c.amplitude_low = uni(rng) * 3.0;
        c.amplitude_high = c.amplitude_low + 0.25 + uni(rng) * 4.0;
        c.channel_count = 1 + static_cast<int>(rng() % 4);
        c.per_channel_gain = uni(rng) * 2.0;

        ok += demodulate(amplify(modulate(p, c), c), c) == p;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail << "round-trip identity " << ok << "/" << trials << " payloads";
    report(1, ok == trials && secs < 5.0, detail.str(), secs);
}

// --- 2: BER against the Gaussian tail --------------------------------------

void criterion_ber_oracle() {
    const auto start = Clock::now();
    ModulationConfig c;
    c.amplitude_high = 1.0;
    c.amplitude_low = 0.0;
    c.sample_rate_hz = 1.0;
    c.bit_duration_s = 1.0;  // one sample per bit
    c.channel_count = 1;
    c.per_channel_gain = 0.0;

    std::mt19937_64 rng(2);
    Payload sent;
    const std::size_t bits = 20000;
    for (std::size_t i = 0; i < bits; ++i) sent.bits.push_back(rng() & 1u);
    const auto trace = modulate(sent, c);

    bool pass = true;
    std::ostringstream detail;
    detail << "BER vs phi(-1/(2s)):";
    double prev = -1.0;
    int point = 0;
    for (double sigma : {0.1, 0.3, 0.5, 1.0}) {
        const auto noisy = apply_noise(trace, {sigma, 0.0}, 1000 + point++);
        const double ber = bit_error_rate(sent, demodulate(noisy, c));
        const double expected = phi(-1.0 / (2.0 * sigma));
        pass = pass && std::abs(ber - expected) <= 0.02 && ber >= prev;
        char buf[64];
        std::snprintf(buf, sizeof(buf), " s=%.1f %.4f/%.4f", sigma, ber, expected);
        detail << buf;
        prev = ber;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    report(2, pass, detail.str(), secs);
}

// --- 3: gradient checks ----------------------------------------------------

void criterion_gradient_checks() {
    const auto start = Clock::now();
    GeneratorConfig gc;
    gc.n_benign = 50;
    gc.n_attack = 50;
    gc.seed = 3;
    const auto data = generate_dataset(gc);

    TrainConfig lr;
    lr.algorithm = Algorithm::LR;
    lr.l2 = 1e-3;
    lr.seed = 11;
    const double lr_err = gradient_check(lr, data);

    TrainConfig nn;
    nn.algorithm = Algorithm::BPNN;
    nn.hidden_width = 8;
    nn.seed = 11;
    const double nn_err = gradient_check(nn, data);

    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail << "max relative error LR " << lr_err << " (<=1e-6), BPNN " << nn_err << " (<=1e-4)";
    report(3, lr_err <= 1e-6 && nn_err <= 1e-4 && secs < 10.0, detail.str(), secs);
}

// --- 4: tiny-tree oracle ---------------------------------------------------

void criterion_tiny_tree_oracle() {
    const auto start = Clock::now();
    int matched = 0;
    const int datasets = 100;
    for (std::uint64_t seed = 0; seed < datasets; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        Dataset d;
        const std::size_t n = 3 + rng() % 6;  // 3..8 samples, distinct coordinates
        for (std::size_t i = 0; i < n; ++i)
            d.samples.push_back(
                {{coord(rng), coord(rng)}, (rng() & 1u) ? Label::Attack : Label::Benign});

        TrainConfig c;
        c.algorithm = Algorithm::DT;
        c.max_depth = 2;
        const auto tree = train_decision_tree(c, d);

        std::map<int, std::vector<Label>> leaves;
        for (const auto& s : d.samples) leaves[find_leaf(tree, s.features)].push_back(s.label);
        double achieved = 0.0;
        for (const auto& [leaf, labels] : leaves)
            achieved += static_cast<double>(labels.size()) * oracles::gini(labels);
        achieved /= static_cast<double>(d.samples.size());

        const double best = oracles::best_weighted_gini(oracles::to_points(d), 2);
        matched += std::abs(achieved - best) <= 1e-9;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail << "CART = brute-force optimum on " << matched << "/" << datasets
           << " tiny datasets";
    report(4, matched == datasets && secs < 30.0, detail.str(), secs);
}

// --- 5: degenerate equivalences ---------------------------------------------

void criterion_degenerate_equivalences() {
    const auto start = Clock::now();
    GeneratorConfig gc;
    gc.n_benign = 150;
    gc.n_attack = 150;
    gc.seed = 5;
    const auto data = generate_dataset(gc);

    TrainConfig rf;
    rf.algorithm = Algorithm::RF;
    rf.tree_count = 1;
    rf.bootstrap = false;
    rf.feature_subsample = false;
    rf.max_depth = 6;
    TrainConfig dt;
    dt.algorithm = Algorithm::DT;
    dt.max_depth = 6;
    dt.seed = rf.seed;
    const auto forest = train_random_forest(rf, data);
    const auto tree = train_decision_tree(dt, data);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> freq(700e6, 1000e6), amp(0.0, 10.0);
    int equal = 0;
    const int probes = 1000;
    for (int i = 0; i < probes; ++i) {
        const FeatureVector fv{freq(rng), amp(rng)};
        equal += predict(forest, fv).label == predict(tree, fv).label;
    }

    TrainConfig bt;
    bt.algorithm = Algorithm::BT;
    bt.rounds = 50;
    bt.max_depth = 3;
    const auto boosted = train_boosted_trees(bt, data);
    bool bt_monotone = boosted.training_loss.size() == 51;
    for (std::size_t i = 1; i < boosted.training_loss.size(); ++i)
        bt_monotone = bt_monotone && boosted.training_loss[i] <= boosted.training_loss[i - 1];

    const auto nbc = train_naive_bayes(data);
    double worst_sum_gap = 0.0;
    for (int i = 0; i < probes; ++i) {
        const auto p = posteriors(nbc, {freq(rng), amp(rng)});
        worst_sum_gap = std::max(worst_sum_gap, std::abs(p[0] + p[1] - 1.0));
    }

    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail << "RF=DT on " << equal << "/" << probes << " inputs, BT loss monotone "
           << (bt_monotone ? "yes" : "NO") << ", NBC posterior gap " << worst_sum_gap;
    report(5, equal == probes && bt_monotone && worst_sum_gap <= 1e-9, detail.str(), secs);
}

// --- 6: end-to-end detection -----------------------------------------------

void criterion_end_to_end() {
    const auto start = Clock::now();
    const RunConfig rc = run_config_from_json(nlohmann::json::object());

    // The default data must honor the promised class separation: nearest
    // attack symbol level at least 4 benign sigmas from the benign mean.
    const double low_level =
        channel_gain(rc.generator.attack_modulation) * rc.generator.attack_modulation.amplitude_low;
    const double separation_sigmas =
        (low_level - rc.generator.benign_amplitude_mean) / rc.generator.benign_amplitude_std;

    const auto data = generate_dataset(rc.generator);
    const auto report_all =
        compare_all(default_algorithms(), rc.grids, data, rc.split_fraction, rc.seed);

    bool all_low = true;
    std::ostringstream detail;
    for (const auto& e : report_all.entries) {
        const bool ok = e.best.fpr && e.best.fnr && *e.best.fpr <= 0.05 && *e.best.fnr <= 0.05;
        all_low = all_low && ok;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s %.3f/%.3f ", algorithm_name(e.algorithm),
                      e.best.fnr.value_or(-1.0), e.best.fpr.value_or(-1.0));
        detail << buf;
    }

    // Fairness certificate: a brute-force single-axis threshold must already
    // solve the task on the same split.
    const auto [train_set, test_set] = stratified_split(data, rc.split_fraction, rc.seed);
    const auto rule = oracles::fit_axis_rule(train_set);
    std::vector<Label> pred, truth;
    for (const auto& s : test_set.samples) {
        pred.push_back(rule.classify(s.features));
        truth.push_back(s.label);
    }
    const auto oracle_metrics = metrics(confusion(pred, truth));
    const bool oracle_ok = oracle_metrics.fnr && oracle_metrics.fpr &&
                           *oracle_metrics.fnr <= 0.05 && *oracle_metrics.fpr <= 0.05;

    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream full;
    full << "fnr/fpr " << detail.str() << "axis-oracle " << oracle_metrics.fnr.value_or(-1.0)
         << "/" << oracle_metrics.fpr.value_or(-1.0) << ", separation "
         << separation_sigmas << " sigma";
    report(6, all_low && oracle_ok && separation_sigmas >= 4.0 && secs < 120.0, full.str(),
           secs);
}

// --- 7: rerun determinism ---------------------------------------------------

void criterion_compare_determinism() {
    const auto start = Clock::now();
    const fs::path base = fs::temp_directory_path() / "gsmem_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    auto run = [&](const std::string& out_dir) {
        const std::string cmd = std::string(GSMEMLAB_BIN) + " compare --seed 42 --out " +
                                out_dir + " >" + (base / "stdout.txt").string() + " 2>" +
                                (base / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    const bool ran = run((base / "a").string()) && run((base / "b").string());
    const bool csv_equal =
        ran && slurp(base / "a" / "comparison.csv") == slurp(base / "b" / "comparison.csv");
    const bool svg_equal =
        ran && slurp(base / "a" / "comparison.svg") == slurp(base / "b" / "comparison.svg");
    const bool nonempty = ran && !slurp(base / "a" / "comparison.csv").empty();

    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail << "compare rerun: csv " << (csv_equal ? "identical" : "DIFFERS") << ", svg "
           << (svg_equal ? "identical" : "DIFFERS");
    report(7, ran && csv_equal && svg_equal && nonempty, detail.str(), secs);
    fs::remove_all(base);
}

}  // namespace

int main() {
    criterion_round_trip();
    criterion_ber_oracle();
    criterion_gradient_checks();
    criterion_tiny_tree_oracle();
    criterion_degenerate_equivalences();
    criterion_end_to_end();
    criterion_compare_determinism();

    if (failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " acceptance criteria FAILED" << std::endl;
    return 1;
}

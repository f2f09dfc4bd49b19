// gsmemlab: command-line front end for the covert-channel simulator and the
// detector comparison harness.
//
//   simulate   modulate a hex payload, add noise, write the emission trace
//   gen-data   generate a labeled benign/attack dataset
//   train      fit one classifier and save it
//   predict    classify a single (frequency, amplitude) point
//   evaluate   score a saved model against a labeled dataset
//   compare    grid-search all six algorithms on one split, emit the report
//
// Exit codes: 0 success, 2 usage error (bad flags, bad inputs), 1 runtime
// error. All outputs are byte-reproducible for identical inputs; wall-clock
// timing is only recorded with --timing.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gsmem/channel.hpp"
#include "gsmem/dataset.hpp"
#include "gsmem/eval.hpp"
#include "gsmem/model_io.hpp"
#include "gsmem/report.hpp"
#include "gsmem/run_config.hpp"
#include "gsmem/trace_io.hpp"

namespace fs = std::filesystem;
using namespace gsmem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::string& must_exist(const std::string& path, const char* what) {
    if (!fs::exists(path))
        throw UsageError(std::string(what) + " file not found: " + path);
    return path;
}

std::vector<std::uint8_t> parse_hex(const std::string& hex) {
    if (hex.empty() || hex.size() % 2 != 0)
        throw UsageError("payload must be a non-empty even-length hex string: '" + hex + "'");
    auto nibble = [&](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw UsageError(std::string("invalid hex digit '") + c + "' in payload");
    };
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    return bytes;
}

RunConfig load_config(const std::string& config_path, std::optional<std::uint64_t> seed) {
    RunConfig rc = config_path.empty()
                       ? run_config_from_json(detail::json::object())
                       : load_run_config(must_exist(config_path, "config"));
    if (seed) {
        rc.seed = *seed;
        rc.generator.seed = *seed;
    }
    return rc;
}

std::string resolve_out(const std::string& out, const RunConfig& rc, const char* file_name) {
    fs::path path = out.empty() ? fs::path(rc.output_dir) / file_name : fs::path(out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    return path.string();
}

std::string rate_or_nan(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

int run_simulate(const std::string& hex, const std::string& config_path,
                 std::optional<std::uint64_t> seed, const std::string& out) {
    const RunConfig rc = load_config(config_path, seed);
    const Payload sent = encode_payload(parse_hex(hex));
    const EmissionTrace noisy =
        apply_noise(amplify(modulate(sent, rc.modulation), rc.modulation), rc.noise, rc.seed);
    write_trace_csv(resolve_out(out, rc, "trace.csv"), noisy);
    std::cout << "ber " << format_double(bit_error_rate(sent, demodulate(noisy, rc.modulation)))
              << "\n";
    return 0;
}

int run_gen_data(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out) {
    const RunConfig rc = load_config(config_path, seed);
    write_dataset_csv(resolve_out(out, rc, "dataset.csv"), generate_dataset(rc.generator));
    return 0;
}

int run_train(const std::string& algorithm, const std::string& config_path,
              std::optional<std::uint64_t> seed, const std::string& data_path,
              const std::string& out) {
    const RunConfig rc = load_config(config_path, {});
    const Algorithm a = algorithm_from_name(algorithm);
    // First grid entry for the algorithm, or plain defaults (e.g. for DT).
    const auto it = rc.grids.find(a);
    TrainConfig cfg;
    if (it != rc.grids.end()) cfg = it->second.front();
    cfg.algorithm = a;
    if (seed) cfg.seed = *seed;
    const Dataset data = read_dataset_csv(must_exist(data_path, "data"));
    const Model model = train(cfg, data);
    save_model(resolve_out(out, rc, "model.json"), model, cfg);
    return 0;
}

int run_predict(const std::string& model_path, double frequency, double amplitude) {
    const auto [model, cfg] = load_model(must_exist(model_path, "model"));
    const Prediction p = predict(model, {frequency, amplitude});
    std::cout << label_text(p.label) << " " << format_double(p.score) << "\n";
    return 0;
}

int run_evaluate(const std::string& model_path, const std::string& data_path) {
    const auto [model, cfg] = load_model(must_exist(model_path, "model"));
    const Dataset data = read_dataset_csv(must_exist(data_path, "data"));
    const MetricsReport r = evaluate(model, data);
    std::cout << "fpr,fnr,accuracy\n"
              << rate_or_nan(r.fpr) << ',' << rate_or_nan(r.fnr) << ','
              << rate_or_nan(r.accuracy) << "\n";
    return 0;
}

int run_compare(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out, bool timing) {
    const RunConfig rc = load_config(config_path, seed);
    const Dataset data = generate_dataset(rc.generator);
    const ComparisonReport report = compare_all(default_algorithms(), rc.grids, data,
                                                rc.split_fraction, rc.seed, timing);
    const std::string out_dir = out.empty() ? rc.output_dir : out;
    emit_report(report, out_dir);
    for (const auto& e : report.entries) {
        std::cout << algorithm_name(e.algorithm) << ": fnr=" << rate_or_nan(e.best.fnr)
                  << " fpr=" << rate_or_nan(e.best.fpr)
                  << " accuracy=" << rate_or_nan(e.best.accuracy) << " (config "
                  << e.config_index + 1 << "/" << e.grid_size << ")\n";
        if (timing)
            std::cerr << algorithm_name(e.algorithm) << " grid training took "
                      << format_double(e.train_seconds) << " s\n";
    }
    std::cout << "wrote " << (fs::path(out_dir) / "comparison.csv").string() << " and "
              << (fs::path(out_dir) / "comparison.svg").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSMem covert-channel simulator and ML detector lab"};
    app.require_subcommand(1);

    std::string config_path, out, hex, algorithm, model_path, data_path;
    std::optional<std::uint64_t> seed;
    double frequency = 0.0, amplitude = 0.0;
    bool timing = false;

    auto* simulate = app.add_subcommand("simulate", "modulate a hex payload into a noisy trace");
    simulate->add_option("payload", hex, "payload as hex, e.g. A5")->required();
    simulate->add_option("--config", config_path, "run config JSON");
    simulate->add_option("--seed", seed, "master seed override");
    simulate->add_option("--out", out, "output trace CSV path");

    auto* gen = app.add_subcommand("gen-data", "generate a labeled dataset CSV");
    gen->add_option("--config", config_path, "run config JSON");
    gen->add_option("--seed", seed, "master seed override");
    gen->add_option("--out", out, "output dataset CSV path");

    auto* train_cmd = app.add_subcommand("train", "train one classifier and save it");
    train_cmd->add_option("algorithm", algorithm, "LR|RF|SVM|BT|BPNN|NBC|DT")->required();
    train_cmd->add_option("--config", config_path, "run config JSON");
    train_cmd->add_option("--seed", seed, "training seed override");
    train_cmd->add_option("--data", data_path, "training dataset CSV")->required();
    train_cmd->add_option("--out", out, "output model path");

    auto* predict_cmd = app.add_subcommand("predict", "classify one feature vector");
    predict_cmd->add_option("--model", model_path, "saved model file")->required();
    predict_cmd->add_option("--frequency", frequency, "frequency in Hz")->required();
    predict_cmd->add_option("--amplitude", amplitude, "amplitude in linear units")->required();

    auto* eval_cmd = app.add_subcommand("evaluate", "metrics of a saved model on a dataset");
    eval_cmd->add_option("--model", model_path, "saved model file")->required();
    eval_cmd->add_option("--data", data_path, "labeled dataset CSV")->required();

    auto* compare = app.add_subcommand("compare", "grid-search all algorithms, emit report");
    compare->add_option("--config", config_path, "run config JSON");
    compare->add_option("--seed", seed, "master seed override");
    compare->add_option("--out", out, "output directory");
    compare->add_flag("--timing", timing, "record wall-clock training time (breaks rerun "
                                          "byte-reproducibility of comparison.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(hex, config_path, seed, out);
        if (gen->parsed()) return run_gen_data(config_path, seed, out);
        if (train_cmd->parsed()) return run_train(algorithm, config_path, seed, data_path, out);
        if (predict_cmd->parsed()) return run_predict(model_path, frequency, amplitude);
        if (eval_cmd->parsed()) return run_evaluate(model_path, data_path);
        if (compare->parsed()) return run_compare(config_path, seed, out, timing);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FramingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

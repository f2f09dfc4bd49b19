#pragma once

// Rendering of a ComparisonReport: `comparison.csv` and `comparison.svg` (a
// grouped FNR/FPR bar chart). Both files are pure functions of the report.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gsmem/eval.hpp"

namespace gsmem {

inline constexpr const char* kComparisonCsvHeader =
    "algorithm,best_fnr,best_fpr,accuracy,config_id,train_seconds";

namespace detail {

inline std::string rate_text(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string short_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace detail

inline std::string comparison_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << kComparisonCsvHeader << '\n';
    for (const auto& e : report.entries)
        out << algorithm_name(e.algorithm) << ',' << detail::rate_text(e.best.fnr) << ','
            << detail::rate_text(e.best.fpr) << ',' << detail::rate_text(e.best.accuracy) << ','
            << e.config_index << ',' << format_double(e.train_seconds) << '\n';
    return out.str();
}

inline std::string comparison_svg(const ComparisonReport& report) {
    constexpr double width = 720, height = 420;
    constexpr double left = 64, right = 24, top = 40, bottom = 56;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double x0 = left, y0 = height - bottom;

    double max_rate = 0.0;
    for (const auto& e : report.entries) {
        if (e.best.fnr) max_rate = std::max(max_rate, *e.best.fnr);
        if (e.best.fpr) max_rate = std::max(max_rate, *e.best.fpr);
    }
    double y_max = 1.0;
    for (double cand : {0.05, 0.1, 0.2, 0.5, 1.0})
        if (max_rate * 1.05 <= cand) {
            y_max = cand;
            break;
        }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << detail::fixed2(width / 2)
        << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
           "Best FNR / FPR per algorithm</text>\n";

    // y axis with three gridlines
    for (int tick = 0; tick <= 2; ++tick) {
        const double r = y_max * tick / 2.0;
        const double y = y0 - plot_h * tick / 2.0;
        svg << "<line x1=\"" << detail::fixed2(x0) << "\" y1=\"" << detail::fixed2(y)
            << "\" x2=\"" << detail::fixed2(x0 + plot_w) << "\" y2=\"" << detail::fixed2(y)
            << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << detail::fixed2(x0 - 8) << "\" y=\"" << detail::fixed2(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::short_rate(r) << "</text>\n";
    }

    const std::size_t n = report.entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = report.entries[i];
        const double group_w = plot_w / static_cast<double>(n);
        const double gx = x0 + group_w * static_cast<double>(i);
        const double bar_w = group_w * 0.28;
        struct BarSpec {
            const std::optional<double>& rate;
            double offset;
            const char* cls;
            const char* fill;
        };
        const BarSpec bars[2] = {{e.best.fnr, 0.18, "bar bar-fnr", "#4477aa"},
                                 {e.best.fpr, 0.54, "bar bar-fpr", "#ee6677"}};
        for (const auto& b : bars) {
            if (!b.rate) continue;
            const double h = plot_h * (*b.rate / y_max);
            const double bx = gx + group_w * b.offset;
            svg << "<rect class=\"" << b.cls << "\" x=\"" << detail::fixed2(bx) << "\" y=\""
                << detail::fixed2(y0 - h) << "\" width=\"" << detail::fixed2(bar_w)
                << "\" height=\"" << detail::fixed2(h) << "\" fill=\"" << b.fill << "\"/>\n";
            svg << "<text x=\"" << detail::fixed2(bx + bar_w / 2) << "\" y=\""
                << detail::fixed2(y0 - h - 4)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                << detail::short_rate(*b.rate) << "</text>\n";
        }
        svg << "<text x=\"" << detail::fixed2(gx + group_w / 2) << "\" y=\""
            << detail::fixed2(y0 + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << algorithm_name(e.algorithm) << "</text>\n";
    }

    // axes
    svg << "<line x1=\"" << detail::fixed2(x0) << "\" y1=\"" << detail::fixed2(y0 - plot_h)
        << "\" x2=\"" << detail::fixed2(x0) << "\" y2=\"" << detail::fixed2(y0)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << detail::fixed2(x0) << "\" y1=\"" << detail::fixed2(y0) << "\" x2=\""
        << detail::fixed2(x0 + plot_w) << "\" y2=\"" << detail::fixed2(y0)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // legend
    const double lx = x0 + plot_w - 110, ly = top - 14;
    svg << "<rect x=\"" << detail::fixed2(lx) << "\" y=\"" << detail::fixed2(ly)
        << "\" width=\"12\" height=\"12\" fill=\"#4477aa\"/>\n";
    svg << "<text x=\"" << detail::fixed2(lx + 16) << "\" y=\"" << detail::fixed2(ly + 10)
        << "\" font-family=\"sans-serif\" font-size=\"11\">FNR</text>\n";
    svg << "<rect x=\"" << detail::fixed2(lx + 56) << "\" y=\"" << detail::fixed2(ly)
        << "\" width=\"12\" height=\"12\" fill=\"#ee6677\"/>\n";
    svg << "<text x=\"" << detail::fixed2(lx + 72) << "\" y=\"" << detail::fixed2(ly + 10)
        << "\" font-family=\"sans-serif\" font-size=\"11\">FPR</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

inline void emit_report(const ComparisonReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    for (const auto& [name, text] :
         {std::pair<std::string, std::string>{"comparison.csv", comparison_csv(report)},
          {"comparison.svg", comparison_svg(report)}}) {
        const auto path = (fs::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + path);
        out << text;
        if (!out.good()) throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace gsmem

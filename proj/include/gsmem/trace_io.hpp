#pragma once

// Emission trace CSV: header `time_s,frequency_hz,amplitude`, one sample per
// row in time order, values printed with enough digits to round-trip exactly.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "gsmem/channel.hpp"
#include "gsmem/common.hpp"

namespace gsmem {

inline constexpr const char* kTraceCsvHeader = "time_s,frequency_hz,amplitude";

inline void write_trace_csv(std::ostream& out, const EmissionTrace& trace) {
    out << kTraceCsvHeader << '\n';
    for (const auto& s : trace.samples)
        out << format_double(s.time_s) << ',' << format_double(s.frequency_hz) << ','
            << format_double(s.amplitude) << '\n';
}

inline void write_trace_csv(const std::string& path, const EmissionTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_trace_csv(out, trace);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

namespace detail {

inline double parse_csv_double(const std::string& field, std::size_t row) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + field + "'", row);
    }
    if (pos != field.size()) throw ParseError("trailing junk in number: '" + field + "'", row);
    return v;
}

// Splits a CSV row into exactly `n` comma-separated fields.
inline std::vector<std::string> split_csv_row(const std::string& line, std::size_t n,
                                              std::size_t row) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (fields.size() != n)
        throw ParseError("expected " + std::to_string(n) + " fields, got " +
                             std::to_string(fields.size()),
                         row);
    return fields;
}

}  // namespace detail

inline EmissionTrace read_trace_csv(std::istream& in, double sample_rate_hz) {
    std::string line;
    std::size_t row = 1;
    if (!std::getline(in, line) || line != kTraceCsvHeader)
        throw ParseError("bad or missing trace CSV header", row);
    EmissionTrace trace;
    trace.sample_rate_hz = sample_rate_hz;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto f = detail::split_csv_row(line, 3, row);
        trace.samples.push_back({detail::parse_csv_double(f[0], row),
                                 detail::parse_csv_double(f[1], row),
                                 detail::parse_csv_double(f[2], row)});
    }
    return trace;
}

inline EmissionTrace read_trace_csv(const std::string& path, double sample_rate_hz) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_trace_csv(in, sample_rate_hz);
}

}  // namespace gsmem

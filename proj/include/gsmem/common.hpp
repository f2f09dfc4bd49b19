#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gsmem {

// Trace framing violations (trace length not a whole number of bit periods).
class FramingError : public std::runtime_error {
public:
    explicit FramingError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input. `row` is 1-based (0 when not applicable); for CSV
// files row 1 is the header.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row = 0)
        : std::runtime_error(row ? what + " (row " + std::to_string(row) + ")" : what),
          row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class TrainingError : public std::runtime_error {
public:
    explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

// Shortest text that still round-trips a double exactly: %.17g.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// splitmix64; used to derive independent sub-seeds from a master seed so
// that per-item streams do not overlap.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51ed2701ULL));
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace gsmem

#pragma once

// Simulated GSMem-style covert channel: a payload of bits is B-ASK modulated
// onto a GSM-band carrier (amplitude envelope sampled at a fixed rate),
// boosted by a multichannel gain, passed through an additive Gaussian noise
// model and recovered by a threshold detector.
//
// Everything here is a pure function of its inputs; randomness enters only
// through explicit seeds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsmem/common.hpp"

namespace gsmem {

// Bit string carried over the channel, one element per bit, each 0 or 1.
struct Payload {
    std::vector<std::uint8_t> bits;

    bool operator==(const Payload&) const = default;
};

struct ModulationConfig {
    double carrier_frequency_hz = 850e6;  // GSM-850 band
    double bit_duration_s = 1e-3;
    double sample_rate_hz = 8000.0;  // of the amplitude envelope
    double amplitude_high = 4.0;     // linear units, bit 1
    double amplitude_low = 2.0;      // linear units, bit 0
    int channel_count = 2;           // memory channels driven in parallel
    double per_channel_gain = 0.5;
};

struct EmissionSample {
    double time_s = 0.0;
    double frequency_hz = 0.0;
    double amplitude = 0.0;  // linear units, never negative

    bool operator==(const EmissionSample&) const = default;
};

struct EmissionTrace {
    std::vector<EmissionSample> samples;
    double sample_rate_hz = 0.0;

    bool operator==(const EmissionTrace&) const = default;
};

struct NoiseModel {
    double amplitude_sigma = 0.25;         // linear units
    double frequency_jitter_sigma_hz = 2e6;
};

inline void validate(const ModulationConfig& c) {
    if (!(c.carrier_frequency_hz > 0.0))
        throw std::invalid_argument("modulation: carrier_frequency_hz must be > 0");
    if (!(c.amplitude_low >= 0.0) || !(c.amplitude_high > c.amplitude_low))
        throw std::invalid_argument("modulation: need amplitude_high > amplitude_low >= 0");
    if (!(c.bit_duration_s * c.sample_rate_hz >= 1.0))
        throw std::invalid_argument("modulation: bit_duration_s * sample_rate_hz must be >= 1");
    if (c.channel_count < 1)
        throw std::invalid_argument("modulation: channel_count must be >= 1");
    if (!(c.per_channel_gain >= 0.0))
        throw std::invalid_argument("modulation: per_channel_gain must be >= 0");
}

inline void validate(const NoiseModel& n) {
    if (!(n.amplitude_sigma >= 0.0) || !(n.frequency_jitter_sigma_hz >= 0.0))
        throw std::invalid_argument("noise: sigmas must be >= 0");
}

inline std::size_t samples_per_bit(const ModulationConfig& c) {
    auto n = static_cast<std::size_t>(c.bit_duration_s * c.sample_rate_hz);
    return std::max<std::size_t>(n, 1);
}

// Linear multichannel gain: one channel transmits at unit gain, each extra
// channel adds per_channel_gain on top.
inline double channel_gain(const ModulationConfig& c) {
    return 1.0 + c.per_channel_gain * (c.channel_count - 1);
}

// Receiver decision level: midpoint of the two gain-scaled symbol amplitudes.
inline double decision_threshold(const ModulationConfig& c) {
    return channel_gain(c) * (c.amplitude_high + c.amplitude_low) / 2.0;
}

// Expands bytes into a bit string, most significant bit of each byte first.
inline Payload encode_payload(std::span<const std::uint8_t> data) {
    if (data.empty()) throw std::invalid_argument("encode_payload: empty input");
    Payload p;
    p.bits.reserve(data.size() * 8);
    for (std::uint8_t byte : data)
        for (int bit = 7; bit >= 0; --bit)
            p.bits.push_back((byte >> bit) & 1u);
    return p;
}

// B-ASK: each bit becomes samples_per_bit(c) envelope samples at the carrier
// frequency, amplitude_high for 1 and amplitude_low for 0. Times start at 0
// with spacing 1/sample_rate.
inline EmissionTrace modulate(const Payload& payload, const ModulationConfig& c) {
    validate(c);
    if (payload.bits.empty()) throw std::invalid_argument("modulate: empty payload");
    const std::size_t spb = samples_per_bit(c);
    const double dt = 1.0 / c.sample_rate_hz;

    EmissionTrace trace;
    trace.sample_rate_hz = c.sample_rate_hz;
    trace.samples.reserve(payload.bits.size() * spb);
    std::size_t i = 0;
    for (std::uint8_t bit : payload.bits) {
        if (bit > 1) throw std::invalid_argument("modulate: payload bits must be 0 or 1");
        const double amp = bit ? c.amplitude_high : c.amplitude_low;
        for (std::size_t k = 0; k < spb; ++k, ++i)
            trace.samples.push_back({i * dt, c.carrier_frequency_hz, amp});
    }
    return trace;
}

// Multichannel amplification: scales every amplitude by channel_gain(c).
inline EmissionTrace amplify(const EmissionTrace& trace, const ModulationConfig& c) {
    validate(c);
    const double gain = channel_gain(c);
    EmissionTrace out = trace;
    for (auto& s : out.samples) s.amplitude *= gain;
    return out;
}

// Additive Gaussian perturbation of amplitude (clamped at 0) and frequency.
// The same (trace, noise, seed) triple always yields the same output.
inline EmissionTrace apply_noise(const EmissionTrace& trace, const NoiseModel& noise,
                                 std::uint64_t seed) {
    validate(noise);
    EmissionTrace out = trace;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (auto& s : out.samples) {
        if (noise.amplitude_sigma > 0.0)
            s.amplitude = std::max(0.0, s.amplitude + noise.amplitude_sigma * unit(rng));
        if (noise.frequency_jitter_sigma_hz > 0.0)
            s.frequency_hz += noise.frequency_jitter_sigma_hz * unit(rng);
    }
    return out;
}

// Threshold detector with synchronized bit framing: the mean amplitude of
// each bit period is compared against decision_threshold(c).
inline Payload demodulate(const EmissionTrace& trace, const ModulationConfig& c) {
    validate(c);
    const std::size_t spb = samples_per_bit(c);
    if (trace.samples.empty() || trace.samples.size() % spb != 0)
        throw FramingError("demodulate: trace length " + std::to_string(trace.samples.size()) +
                           " is not a positive multiple of " + std::to_string(spb) +
                           " samples per bit");
    const double threshold = decision_threshold(c);
    Payload p;
    p.bits.reserve(trace.samples.size() / spb);
    for (std::size_t i = 0; i < trace.samples.size(); i += spb) {
        double sum = 0.0;
        for (std::size_t k = 0; k < spb; ++k) sum += trace.samples[i + k].amplitude;
        p.bits.push_back(sum / spb > threshold ? 1 : 0);
    }
    return p;
}

// Fraction of positions where the two payloads disagree.
inline double bit_error_rate(const Payload& sent, const Payload& received) {
    if (sent.bits.empty() || sent.bits.size() != received.bits.size())
        throw std::invalid_argument("bit_error_rate: payloads must be non-empty and equal length");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.bits.size(); ++i)
        if (sent.bits[i] != received.bits[i]) ++errors;
    return static_cast<double>(errors) / sent.bits.size();
}

}  // namespace gsmem

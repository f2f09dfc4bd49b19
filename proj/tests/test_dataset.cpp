#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "gsmem/dataset.hpp"

using namespace gsmem;

namespace {

GeneratorConfig small_config(std::size_t n_benign = 40, std::size_t n_attack = 40) {
    GeneratorConfig c;
    c.n_benign = n_benign;
    c.n_attack = n_attack;
    c.seed = 7;
    return c;
}

std::vector<std::tuple<double, double, int>> sorted_rows(const Dataset& d) {
    std::vector<std::tuple<double, double, int>> rows;
    for (const auto& s : d.samples)
        rows.emplace_back(s.features.frequency_hz, s.features.amplitude,
                          static_cast<int>(s.label));
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

TEST_CASE("extract_features averages consecutive windows") {
    EmissionTrace trace;
    trace.sample_rate_hz = 1.0;
    for (double amp : {2.0, 2.0, 0.0, 0.0})
        trace.samples.push_back({static_cast<double>(trace.samples.size()), 850e6, amp});

    SECTION("whole-trace window yields one mean vector") {
        const auto fv = extract_features(trace, 4);
        REQUIRE(fv.size() == 1);
        CHECK(fv[0].frequency_hz == 850e6);
        CHECK(fv[0].amplitude == 1.0);
    }
    SECTION("window of one reproduces the samples") {
        const auto fv = extract_features(trace, 1);
        REQUIRE(fv.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(fv[i].frequency_hz == trace.samples[i].frequency_hz);
            CHECK(fv[i].amplitude == trace.samples[i].amplitude);
        }
    }
    SECTION("final partial window is dropped") {
        trace.samples.push_back({4.0, 850e6, 9.0});
        CHECK(extract_features(trace, 2).size() == 2);
    }
    SECTION("edge cases") {
        CHECK(extract_features(EmissionTrace{}, 3).empty());
        CHECK_THROWS_AS(extract_features(trace, 0), std::invalid_argument);
    }
    SECTION("output length law") {
        for (std::size_t window = 1; window <= 6; ++window)
            CHECK(extract_features(trace, window).size() == trace.samples.size() / window);
    }
}

TEST_CASE("generate_benign draws a seeded noise floor") {
    SECTION("zero count yields an empty set") {
        CHECK(generate_benign(small_config(0, 5)).empty());
    }
    SECTION("zero spread pins every amplitude at the mean") {
        auto c = small_config();
        c.benign_amplitude_std = 0.0;
        for (const auto& s : generate_benign(c)) CHECK(s.features.amplitude == c.benign_amplitude_mean);
    }
    SECTION("deterministic under the seed, in range, labeled benign") {
        const auto c = small_config();
        const auto a = generate_benign(c);
        const auto b = generate_benign(c);
        REQUIRE(a.size() == c.n_benign);
        CHECK(a == b);
        for (const auto& s : a) {
            CHECK(s.label == Label::Benign);
            CHECK(s.features.frequency_hz >= c.benign_frequency_min_hz);
            CHECK(s.features.frequency_hz <= c.benign_frequency_max_hz);
            CHECK(s.features.amplitude >= 0.0);
            CHECK(std::isfinite(s.features.amplitude));
        }
    }
}

TEST_CASE("generate_attack runs payloads through the transmit chain") {
    SECTION("zero count yields an empty set") {
        CHECK(generate_attack(small_config(5, 0)).empty());
    }
    SECTION("noise-free low-zero emissions hit exactly the two symbol levels") {
        auto c = small_config(0, 64);
        c.attack_noise = {0.0, 0.0};
        c.attack_modulation.amplitude_low = 0.0;
        const double high_level =
            channel_gain(c.attack_modulation) * c.attack_modulation.amplitude_high;
        const auto samples = generate_attack(c);
        REQUIRE(samples.size() == 64);
        for (const auto& s : samples) {
            CHECK(s.label == Label::Attack);
            CHECK((s.features.amplitude == 0.0 || s.features.amplitude == high_level));
        }
    }
    SECTION("deterministic under the seed") {
        const auto c = small_config(0, 50);
        const auto a = generate_attack(c);
        const auto b = generate_attack(c);
        CHECK(a == b);
        auto other = c;
        other.seed = 8;
        CHECK(a != generate_attack(other));
    }
}

TEST_CASE("stratified_split preserves per-class counts") {
    Dataset d;
    for (int i = 0; i < 100; ++i)
        d.samples.push_back({{800e6 + i, 1.0}, Label::Benign});
    for (int i = 0; i < 100; ++i)
        d.samples.push_back({{800e6 + i, 5.0}, Label::Attack});

    SECTION("70/30 per class") {
        const auto [train, test] = stratified_split(d, 0.7, 3);
        CHECK(train.count(Label::Benign) == 70);
        CHECK(train.count(Label::Attack) == 70);
        CHECK(test.count(Label::Benign) == 30);
        CHECK(test.count(Label::Attack) == 30);
    }
    SECTION("union of the parts is the original multiset") {
        const auto [train, test] = stratified_split(d, 0.43, 11);
        Dataset joined = train;
        joined.samples.insert(joined.samples.end(), test.samples.begin(), test.samples.end());
        CHECK(sorted_rows(joined) == sorted_rows(d));
    }
    SECTION("same seed, same split; different seed, different split") {
        const auto [a_train, a_test] = stratified_split(d, 0.7, 5);
        const auto [b_train, b_test] = stratified_split(d, 0.7, 5);
        CHECK(a_train == b_train);
        CHECK(a_test == b_test);
        const auto [c_train, c_test] = stratified_split(d, 0.7, 6);
        CHECK(a_train != c_train);
    }
    SECTION("a class below two samples cannot be split") {
        Dataset tiny;
        tiny.samples.push_back({{1.0, 1.0}, Label::Benign});
        tiny.samples.push_back({{2.0, 2.0}, Label::Benign});
        tiny.samples.push_back({{3.0, 3.0}, Label::Attack});
        CHECK_THROWS(stratified_split(tiny, 0.5, 1));
        CHECK_THROWS_AS(stratified_split(d, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(stratified_split(d, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("dataset CSV round-trips exactly and rejects bad rows") {
    const auto data = generate_dataset(small_config());

    SECTION("round trip equality") {
        std::stringstream buffer;
        write_dataset_csv(buffer, data);
        std::stringstream reader(buffer.str());
        CHECK(read_dataset_csv(reader) == data);
    }
    SECTION("identical configs produce identical CSV bytes") {
        std::stringstream a, b;
        write_dataset_csv(a, generate_dataset(small_config()));
        write_dataset_csv(b, generate_dataset(small_config()));
        CHECK(a.str() == b.str());
    }
    SECTION("unknown label text names the row") {
        std::stringstream bad("frequency_hz,amplitude,label\n1.0,2.0,attack\n3.0,4.0,Unknown\n");
        try {
            read_dataset_csv(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 3);
            CHECK(std::string(e.what()).find("Unknown") != std::string::npos);
        }
    }
    SECTION("header-only file is an empty dataset") {
        std::stringstream empty("frequency_hz,amplitude,label\n");
        CHECK(read_dataset_csv(empty).samples.empty());
    }
    SECTION("missing header is rejected") {
        std::stringstream nohdr("1.0,2.0,attack\n");
        CHECK_THROWS_AS(read_dataset_csv(nohdr), ParseError);
    }
}

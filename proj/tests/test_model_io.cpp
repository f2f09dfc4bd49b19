#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gsmem/model_io.hpp"

using namespace gsmem;

namespace {

Dataset training_blobs() {
    GeneratorConfig c;
    c.n_benign = 40;
    c.n_attack = 40;
    c.seed = 19;
    return generate_dataset(c);
}

}  // namespace

TEST_CASE("saved models reproduce predictions exactly") {
    const auto data = training_blobs();
    for (Algorithm a : {Algorithm::LR, Algorithm::RF, Algorithm::SVM, Algorithm::BT,
                        Algorithm::BPNN, Algorithm::NBC, Algorithm::DT}) {
        TrainConfig c;
        c.algorithm = a;
        c.epochs = 60;
        c.tree_count = 4;
        c.rounds = 8;
        if (a == Algorithm::BT) c.max_depth = 3;
        const Model model = train(c, data);

        const std::string text = serialize_model(model, c);
        const auto [loaded, loaded_config] = deserialize_model(text);
        CHECK(loaded_config == c);
        CHECK(loaded == model);

        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> freq(700e6, 1000e6), amp(0.0, 10.0);
        for (int i = 0; i < 200; ++i) {
            const FeatureVector fv{freq(rng), amp(rng)};
            const auto p = predict(model, fv);
            const auto q = predict(loaded, fv);
            CHECK(p.score == q.score);
            CHECK(p.label == q.label);
        }

        // serialization itself is deterministic
        CHECK(serialize_model(loaded, loaded_config) == text);
    }
}

TEST_CASE("malformed model documents are parse errors") {
    CHECK_THROWS_AS(deserialize_model("not json at all"), ParseError);
    CHECK_THROWS_AS(deserialize_model("{}"), ParseError);
    CHECK_THROWS_AS(deserialize_model(R"({"format":"gsmem-model","algorithm":"XX"})"),
                    ParseError);
    CHECK_THROWS_AS(
        deserialize_model(R"({"format":"gsmem-model","algorithm":"LR","params":{}})"),
        ParseError);
}

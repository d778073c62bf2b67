#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "draco/config.hpp"
#include "draco/harness.hpp"

using namespace draco;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.node_count = 6;
    config.max_adversaries = 1;
    config.scheme = Scheme::Repetition;
    config.aggregator = AggregatorKind::DracoRepetition;
    config.model.kind = ModelKind::LogisticRegression;
    config.model.feature_dim = 3;
    config.data_kind = DataKind::Blobs;
    config.data_count = 120;
    config.batch = 30;
    config.learning_rate = 0.05;
    config.iterations = 5;
    config.seed = 11;
    config.deterministic_timings = true;
    config.debug_oracle = true;
    return config;
}

std::string csv_of(const ExperimentResult& result) {
    std::string out = metrics_csv_header() + "\n";
    for (const auto& row : result.rows) out += metrics_row_csv(row) + "\n";
    return out;
}

std::vector<std::string> loss_column(const ExperimentResult& result) {
    std::vector<std::string> out;
    for (const auto& row : result.rows) {
        const std::string csv = metrics_row_csv(row);
        std::size_t field = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= csv.size(); ++i) {
            if (i == csv.size() || csv[i] == ',') {
                if (field == 5) out.push_back(csv.substr(start, i - start));
                ++field;
                start = i + 1;
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("a one-iteration run emits one metrics row") {
    auto config = small_config();
    config.iterations = 1;
    const auto result = run_experiment(config);
    CHECK(result.rows.size() == 1);
    CHECK(result.final_weights.size() == 3);
}

TEST_CASE("honest rounds decode to the oracle sum") {
    auto config = small_config();
    RunOptions opts;
    opts.keep_transcripts = true;
    const auto result = run_experiment(config, opts);
    for (const auto& t : result.transcripts) {
        REQUIRE(t.decode_matches_oracle.has_value());
        CHECK(*t.decode_matches_oracle);
        CHECK(t.adversaries.empty());
    }
}

TEST_CASE("identical seeds produce byte-identical metrics") {
    const auto config = small_config();
    const auto a = run_experiment(config);
    const auto b = run_experiment(config);
    CHECK(csv_of(a) == csv_of(b));
}

TEST_CASE("repetition trajectories are attack-invariant bitwise") {
    auto attacked = small_config();
    attacked.attack.kind = AttackKind::ReverseGradient;
    attacked.attack.count = 1;
    attacked.iterations = 20;

    auto baseline = small_config();
    baseline.aggregator = AggregatorKind::Mean;
    baseline.iterations = 20;

    RunOptions opts;
    opts.record_weights = true;
    const auto a = run_experiment(attacked, opts);
    const auto b = run_experiment(baseline, opts);
    REQUIRE(a.weight_history.size() == b.weight_history.size());
    for (std::size_t t = 0; t < a.weight_history.size(); ++t) {
        CHECK(std::memcmp(a.weight_history[t].data(), b.weight_history[t].data(),
                          a.weight_history[t].size() * sizeof(double)) == 0);
    }
    CHECK(loss_column(a) == loss_column(b));
}

TEST_CASE("a same-group collusion past the bound is recorded as a mismatch") {
    auto config = small_config();
    config.attack.kind = AttackKind::Custom;
    config.attack.custom_label = "group-collusion";
    config.attack.count = 2;
    config.attack.selection = AdversarySelection::FixedSet;
    config.attack.fixed_set = {0, 1};  // same repetition group
    config.attack.custom_real = [](std::size_t, const std::vector<double>& honest) {
        return std::vector<double>(honest.size(), 41.0);
    };
    config.iterations = 1;
    RunOptions opts;
    opts.keep_transcripts = true;
    const auto result = run_experiment(config, opts);
    REQUIRE(result.transcripts.size() == 1);
    REQUIRE(result.transcripts[0].decode_matches_oracle.has_value());
    CHECK(!*result.transcripts[0].decode_matches_oracle);
}

TEST_CASE("cyclic rounds detect the planted adversaries") {
    auto config = small_config();
    config.node_count = 7;
    config.max_adversaries = 2;
    config.scheme = Scheme::Cyclic;
    config.aggregator = AggregatorKind::DracoCyclic;
    config.batch = 28;
    config.data_count = 112;
    config.attack.kind = AttackKind::Constant;
    config.attack.count = 2;
    config.iterations = 8;
    RunOptions opts;
    opts.keep_transcripts = true;
    const auto result = run_experiment(config, opts);
    for (const auto& t : result.transcripts) {
        CHECK(t.decode_ok);
        CHECK(t.detected == t.adversaries);
        REQUIRE(t.decode_matches_oracle.has_value());
        CHECK(*t.decode_matches_oracle);
    }
}

TEST_CASE("adversary-free cyclic training matches the un-coded run") {
    auto coded = small_config();
    coded.node_count = 7;
    coded.max_adversaries = 2;
    coded.scheme = Scheme::Cyclic;
    coded.aggregator = AggregatorKind::DracoCyclic;
    coded.batch = 28;
    coded.data_count = 112;
    coded.iterations = 30;

    auto bypass = coded;
    bypass.aggregator = AggregatorKind::Mean;

    RunOptions opts;
    opts.record_weights = true;
    const auto a = run_experiment(coded, opts);
    const auto b = run_experiment(bypass, opts);
    for (std::size_t t = 0; t < a.weight_history.size(); ++t) {
        for (std::size_t i = 0; i < a.weight_history[t].size(); ++i) {
            CHECK(std::abs(a.weight_history[t][i] - b.weight_history[t][i]) <= 1e-6);
        }
    }
}

TEST_CASE("a tiny mlp trains through the coded pipeline") {
    auto config = small_config();
    config.model.kind = ModelKind::TinyMlp;
    config.model.hidden = {6};
    config.learning_rate = 0.1;
    config.iterations = 40;
    config.attack.kind = AttackKind::ReverseGradient;
    config.attack.count = 1;
    const auto result = run_experiment(config);
    CHECK(result.final_weights.size() == config.model.param_dim());
    CHECK(result.rows.back().loss < result.rows.front().loss);
    CHECK(std::isfinite(result.rows.back().loss));
}

TEST_CASE("transcripts serialize as line-delimited records") {
    auto config = small_config();
    config.iterations = 3;
    RunOptions opts;
    opts.keep_transcripts = true;
    const auto result = run_experiment(config, opts);
    const std::string path = "transcripts_test.jsonl";
    write_transcripts_jsonl(result.transcripts, path);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        ++lines;
    }
    CHECK(lines == 3);
    std::filesystem::remove(path);
}

TEST_CASE("tables cache is written once and reused") {
    auto config = small_config();
    config.node_count = 7;
    config.max_adversaries = 2;
    config.scheme = Scheme::Cyclic;
    config.aggregator = AggregatorKind::DracoCyclic;
    config.batch = 28;
    config.data_count = 112;
    config.iterations = 2;
    config.tables_cache = "harness_tables.drco";

    const auto first = run_experiment(config);
    CHECK(std::filesystem::exists(config.tables_cache));
    const auto second = run_experiment(config);  // loads the cache
    CHECK(csv_of(first) == csv_of(second));

    // A cache built for different parameters is rejected.
    auto mismatched = config;
    mismatched.node_count = 14;
    mismatched.batch = 28;
    mismatched.data_count = 112;
    CHECK_THROWS_AS((void)run_experiment(mismatched), ConfigError);
    std::filesystem::remove(config.tables_cache);
}

TEST_CASE("config validation rejects bad shapes") {
    auto config = small_config();
    config.batch = 31;  // not divisible by P
    CHECK_THROWS_AS(config.validate(), InvalidParams);

    config = small_config();
    config.learning_rate = 0.0;
    CHECK_THROWS_AS(config.validate(), InvalidParams);

    config = small_config();
    config.scheme = Scheme::Cyclic;  // aggregator still draco-rep
    CHECK_THROWS_AS(config.validate(), InvalidParams);

    config = small_config();
    config.data_count = 10;
    CHECK_THROWS_AS(config.validate(), InvalidParams);
}

// draco CLI: configure and run experiments, run the verification suites,
// measure encode/decode timings, and (re)build the cyclic table cache.
//
// Exit codes: 0 success, 1 validation failure, 2 config/IO error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "draco/config.hpp"
#include "draco/tables_io.hpp"
#include "draco/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("DRACO_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(raw, &pos);
        if (pos != std::string(raw).size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw draco::ConfigError("DRACO_SEED is not an unsigned integer");
    }
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<std::size_t>(std::stoull(item)));
    }
    if (out.empty()) throw draco::ConfigError("empty size list: '" + text + "'");
    return out;
}

int print_checks(const std::vector<draco::verify::Check>& checks) {
    bool all = true;
    for (const auto& check : checks) {
        std::printf("%s: %s — %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.c_str());
        all = all && check.pass;
    }
    return all ? kExitOk : kExitValidation;
}

int cmd_train(const std::string& config_path, const std::vector<std::string>& overrides,
              std::optional<std::uint64_t> seed_flag) {
    std::map<std::string, std::string> values;
    if (!config_path.empty()) values = draco::parse_config_file(config_path);
    draco::apply_overrides(values, overrides);
    if (const auto seed = env_seed()) values["train.seed"] = std::to_string(*seed);
    if (seed_flag) values["train.seed"] = std::to_string(*seed_flag);

    const draco::ExperimentConfig config = draco::config_from_values(values);
    config.validate();

    draco::RunOptions opts;
    opts.keep_transcripts = !config.transcript_path.empty();
    const draco::ExperimentResult result = draco::run_experiment(config, opts);

    std::filesystem::create_directories(config.out_dir);
    const std::string metrics_path =
        (std::filesystem::path(config.out_dir) / "metrics.csv").string();
    draco::write_metrics_csv(result.rows, metrics_path);
    if (!config.transcript_path.empty()) {
        draco::write_transcripts_jsonl(result.transcripts, config.transcript_path);
    }

    const auto& last = result.rows.back();
    std::printf("trained %zu rounds: final loss %.6g, accuracy %.6g\n", result.rows.size(),
                last.loss, last.accuracy_value);
    std::printf("metrics written to %s\n", metrics_path.c_str());
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t trials, std::uint64_t seed) {
    std::vector<draco::verify::Check> checks;
    if (suite == "codes" || suite == "all") {
        const auto batch = draco::verify::verify_codes(seed);
        checks.insert(checks.end(), batch.begin(), batch.end());
    }
    if (suite == "detection" || suite == "all") {
        const auto batch = draco::verify::verify_detection(trials, seed);
        checks.insert(checks.end(), batch.begin(), batch.end());
    }
    if (suite == "equivalence" || suite == "all") {
        const auto batch = draco::verify::verify_equivalence(seed);
        checks.insert(checks.end(), batch.begin(), batch.end());
    }
    if (checks.empty()) {
        throw draco::ConfigError("unknown suite '" + suite +
                                 "' (expected codes|detection|equivalence|all)");
    }
    return print_checks(checks);
}

int cmd_bench(const std::string& scheme_name, const std::vector<std::size_t>& node_counts,
              std::size_t adversaries, std::size_t dim, std::size_t repetitions,
              std::size_t gm_iters, const std::string& out_path, std::uint64_t seed) {
    const draco::Scheme scheme =
        scheme_name == "cyclic" ? draco::Scheme::Cyclic : draco::Scheme::Repetition;
    if (scheme_name != "cyclic" && scheme_name != "repetition") {
        throw draco::ConfigError("bench scheme must be repetition|cyclic");
    }
    std::ostringstream csv;
    csv << "scheme,P,s,d,encode_ns,decode_ns,gm_ns\n";
    for (const std::size_t p : node_counts) {
        const auto cell =
            draco::verify::bench_cell(scheme, p, adversaries, dim, repetitions, gm_iters, seed);
        csv << scheme_name << ',' << p << ',' << adversaries << ',' << dim << ','
            << cell.encode_ns << ',' << cell.decode_ns << ',' << cell.gm_ns << '\n';
        std::printf("%s P=%zu s=%zu d=%zu: encode %llu ns, decode %llu ns, gm %llu ns\n",
                    scheme_name.c_str(), p, adversaries, dim,
                    static_cast<unsigned long long>(cell.encode_ns),
                    static_cast<unsigned long long>(cell.decode_ns),
                    static_cast<unsigned long long>(cell.gm_ns));
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw draco::ConfigError("cannot open " + out_path);
        out << csv.str();
    }
    return kExitOk;
}

int cmd_tables(std::size_t node_count, std::size_t adversaries, const std::string& out_path) {
    const draco::CodeParams params(node_count, adversaries, draco::Scheme::Cyclic);
    const draco::CyclicTables tables = draco::build_cyclic_tables(params);
    draco::save_cyclic_tables(tables, out_path);
    std::printf("cyclic tables for P=%zu s=%zu written to %s\n", node_count, adversaries,
                out_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DRACO coded-aggregation experiment harness"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "run a training experiment, emit metrics CSV");
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed_flag;
    train->add_option("--config", config_path, "flat key = value config file");
    train->add_option("--override", overrides, "key=value override (repeatable)");
    train->add_option("--seed", seed_flag, "seed override (beats DRACO_SEED and the file)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    std::string suite = "all";
    std::size_t trials = 10000;
    std::uint64_t verify_seed = 20240211;
    verify->add_option("suite", suite, "codes|detection|equivalence|all");
    verify->add_option("--trials", trials, "randomized detection trials");
    verify->add_option("--seed", verify_seed, "suite seed");

    // bench
    auto* bench = app.add_subcommand("bench", "median encode/decode/gm timings");
    std::string scheme_name = "repetition";
    std::string node_list = "6,12,24,48";
    std::size_t bench_s = 1;
    std::size_t bench_dim = 10000;
    std::size_t bench_reps = 20;
    std::size_t gm_iters = 100;
    std::string bench_out;
    std::uint64_t bench_seed = 20240211;
    bench->add_option("--scheme", scheme_name, "repetition|cyclic");
    bench->add_option("--P", node_list, "comma-separated node counts");
    bench->add_option("--s", bench_s, "adversary bound");
    bench->add_option("--d", bench_dim, "model dimension");
    bench->add_option("--reps", bench_reps, "repetitions per cell (median reported)");
    bench->add_option("--gm-iters", gm_iters, "Weiszfeld iterations (0 skips gm)");
    bench->add_option("--out", bench_out, "CSV output path");
    bench->add_option("--seed", bench_seed, "bench seed");

    // tables
    auto* tables = app.add_subcommand("tables", "regenerate the cyclic table cache");
    std::size_t tables_p = 15;
    std::size_t tables_s = 2;
    std::string tables_out = "tables.drco";
    tables->add_option("--P", tables_p, "node count");
    tables->add_option("--s", tables_s, "adversary bound");
    tables->add_option("--out", tables_out, "cache path");

    try {
        app.parse(argc, argv);
        if (train->parsed()) return cmd_train(config_path, overrides, seed_flag);
        if (verify->parsed()) {
            std::uint64_t seed = verify_seed;
            if (verify->count("--seed") == 0) {
                if (const auto env = env_seed()) seed = *env;
            }
            return cmd_verify(suite, trials, seed);
        }
        if (bench->parsed()) {
            return cmd_bench(scheme_name, parse_size_list(node_list), bench_s, bench_dim,
                             bench_reps, gm_iters, bench_out, bench_seed);
        }
        if (tables->parsed()) return cmd_tables(tables_p, tables_s, tables_out);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const draco::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const draco::InvalidParams& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kExitValidation;
    } catch (const draco::InvalidSpec& e) {
        std::fprintf(stderr, "invalid attack spec: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}

#include "draco/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "draco/tables_io.hpp"

namespace draco {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

Assignment identity_assignment(std::size_t node_count) {
    Assignment a;
    a.per_node.resize(node_count);
    for (std::size_t j = 0; j < node_count; ++j) a.per_node[j] = {j};
    return a;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back('|');
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < bytes; ++i) {
        hash ^= p[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

CodeParams ExperimentConfig::code_params() const {
    return CodeParams(node_count, max_adversaries, scheme);
}

void ExperimentConfig::validate() const {
    (void)code_params();  // throws InvalidParams on a bad (P, s, scheme)
    if (batch == 0 || batch % node_count != 0) {
        throw InvalidParams("config: batch size must be a positive multiple of P");
    }
    if (learning_rate <= 0.0) throw InvalidParams("config: learning rate must be positive");
    if (iterations < 1) throw InvalidParams("config: need at least one iteration");
    if (data_count < batch) throw InvalidParams("config: dataset smaller than one batch");
    model.validate();
    attack.validate(node_count);
    tol.validate();
    if (aggregator == AggregatorKind::DracoRepetition && scheme != Scheme::Repetition) {
        throw InvalidParams("config: draco-rep aggregator needs code.scheme = repetition");
    }
    if (aggregator == AggregatorKind::DracoCyclic && scheme != Scheme::Cyclic) {
        throw InvalidParams("config: draco-cyclic aggregator needs code.scheme = cyclic");
    }
}

std::size_t baseline_block(const CodeParams& params) {
    const std::size_t r = params.redundancy();
    return params.node_count % r == 0 ? r : 1;
}

RoundContext make_round_context(const ExperimentConfig& config, const CyclicTables* tables) {
    RoundContext ctx;
    ctx.config = &config;
    ctx.params = config.code_params();
    switch (config.aggregator) {
        case AggregatorKind::DracoRepetition:
            ctx.assignment = repetition_assignment(ctx.params);
            break;
        case AggregatorKind::DracoCyclic:
            if (tables == nullptr) throw InvalidParams("cyclic aggregation needs tables");
            ctx.assignment = tables->assignment;
            break;
        case AggregatorKind::Mean:
        case AggregatorKind::GeometricMedian:
            ctx.assignment = identity_assignment(config.node_count);
            break;
    }
    ctx.tables = tables;
    return ctx;
}

std::pair<std::vector<double>, RoundTranscript> run_round(
    const std::vector<double>& weights, const DataView& data,
    const std::vector<std::vector<std::size_t>>& shards, const RoundContext& ctx,
    std::size_t round_index, Rng& attack_rng, Rng& detect_rng) {
    const ExperimentConfig& cfg = *ctx.config;
    const std::size_t node_count = ctx.params.node_count;
    if (shards.size() != node_count) throw InvalidParams("run_round: need one shard per node");
    for (const auto& shard : shards) {
        if (shard.size() != shards.front().size()) {
            throw InvalidParams("run_round: shards must partition the batch equally");
        }
    }

    RoundTranscript transcript;
    transcript.round_index = round_index;

    // Compute phase: each node evaluates the gradient units it is assigned,
    // in ascending unit order (redundant work is recomputed per node, as a
    // real deployment would).
    auto started = Clock::now();
    std::vector<RealColumns> node_units(node_count);
    for (std::size_t j = 0; j < node_count; ++j) {
        const auto& assigned = ctx.assignment.per_node[j];
        node_units[j].reserve(assigned.size());
        for (std::size_t unit : assigned) {
            node_units[j].push_back(gradient(cfg.model, weights, data, shards[unit]));
        }
    }
    transcript.compute_ns = elapsed_ns(started);

    const bool complex_path = cfg.aggregator == AggregatorKind::DracoCyclic;
    const std::size_t model_dim = weights.size();

    // Encode phase.
    started = Clock::now();
    RealColumns real_messages;
    ComplexColumns complex_messages;
    if (complex_path) {
        complex_messages.resize(node_count);
        for (std::size_t j = 0; j < node_count; ++j) {
            ComplexColumns grads;
            grads.reserve(node_units[j].size());
            for (const auto& col : node_units[j]) {
                grads.push_back(cfg.pack ? pack_column(col) : promote_column(col));
            }
            complex_messages[j] = encode_cyclic(j, grads, *ctx.tables);
        }
    } else {
        real_messages.resize(node_count);
        for (std::size_t j = 0; j < node_count; ++j) {
            real_messages[j] = encode_repetition(node_units[j]);
        }
    }
    transcript.encode_ns = elapsed_ns(started);

    // Adversaries replace their outbound messages.
    transcript.adversaries = select_adversaries(cfg.attack, node_count, attack_rng);
    for (std::size_t adv : transcript.adversaries) {
        if (complex_path) {
            complex_messages[adv] = corrupt(adv, complex_messages[adv], cfg.attack);
        } else {
            real_messages[adv] = corrupt(adv, real_messages[adv], cfg.attack);
        }
    }

    transcript.message_digests.resize(node_count);
    for (std::size_t j = 0; j < node_count; ++j) {
        if (complex_path) {
            transcript.message_digests[j] = fnv1a64(
                complex_messages[j].data(), complex_messages[j].size() * sizeof(Complex));
        } else {
            transcript.message_digests[j] =
                fnv1a64(real_messages[j].data(), real_messages[j].size() * sizeof(double));
        }
    }

    // Decode phase at the PS.
    started = Clock::now();
    std::vector<double> update(model_dim, 0.0);
    try {
        switch (cfg.aggregator) {
            case AggregatorKind::DracoRepetition:
                update = decode_repetition(real_messages, ctx.params);
                break;
            case AggregatorKind::DracoCyclic: {
                const DetectionResult detection =
                    detect_adversaries(complex_messages, *ctx.tables, detect_rng, cfg.tol);
                transcript.detected = detection.adversaries;
                transcript.locator_residual = detection.locator_residual;
                const ComplexVector decoded =
                    decode_cyclic(complex_messages, *ctx.tables, detection.adversaries);
                update = cfg.pack ? unpack_column(decoded, model_dim) : real_part(decoded);
                break;
            }
            case AggregatorKind::Mean:
                update = blocked_sum(real_messages, baseline_block(ctx.params));
                break;
            case AggregatorKind::GeometricMedian: {
                update = geometric_median_detailed(real_messages, cfg.gm).point;
                for (auto& x : update) x *= static_cast<double>(node_count);
                break;
            }
        }
    } catch (const std::exception& e) {
        transcript.decode_ok = false;
        transcript.decode_error = e.what();
        std::fill(update.begin(), update.end(), 0.0);
    }
    transcript.decode_ns = elapsed_ns(started);
    transcript.decoded_sum = update;

    if (cfg.debug_oracle) {
        RealColumns units(node_count);
        for (std::size_t k = 0; k < node_count; ++k) {
            units[k] = gradient(cfg.model, weights, data, shards[k]);
        }
        auto oracle = blocked_sum(units, baseline_block(ctx.params));
        if (transcript.decode_ok) {
            if (cfg.aggregator == AggregatorKind::DracoRepetition ||
                cfg.aggregator == AggregatorKind::Mean) {
                transcript.decode_matches_oracle =
                    std::memcmp(update.data(), oracle.data(), oracle.size() * sizeof(double)) == 0;
            } else {
                double max_diff = 0.0;
                double max_mag = 1.0;
                for (std::size_t i = 0; i < oracle.size(); ++i) {
                    max_diff = std::max(max_diff, std::abs(update[i] - oracle[i]));
                    max_mag = std::max(max_mag, std::abs(oracle[i]));
                }
                transcript.decode_matches_oracle = max_diff <= cfg.tol.recover_tol * max_mag;
            }
        } else {
            transcript.decode_matches_oracle = false;
        }
        transcript.oracle_sum = std::move(oracle);
    }

    if (cfg.deterministic_timings) {
        transcript.compute_ns = transcript.encode_ns = transcript.decode_ns = 0;
    }
    return {std::move(update), std::move(transcript)};
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& opts) {
    config.validate();

    SyntheticDataset dataset;
    const bool want_cache = !config.data_cache.empty();
    if (want_cache && std::filesystem::exists(config.data_cache)) {
        dataset = load_dataset(config.data_cache);
        dataset.kind = config.data_kind;
        if (dataset.dim != config.model.feature_dim) {
            throw ConfigError("dataset cache dimension does not match the model");
        }
        if (dataset.count < config.batch) {
            throw ConfigError("dataset cache smaller than one batch");
        }
    } else {
        dataset = generate_synthetic(config.data_kind, config.data_count,
                                     config.model.feature_dim, config.data_noise_sd, config.seed);
        if (want_cache) save_dataset(dataset, config.data_cache);
    }
    const DataView data = dataset.view();

    std::optional<CyclicTables> tables;
    const CyclicTables* tables_ptr = nullptr;
    if (config.aggregator == AggregatorKind::DracoCyclic) {
        if (!config.tables_cache.empty() && std::filesystem::exists(config.tables_cache)) {
            tables = load_cyclic_tables(config.tables_cache);
            if (tables->params.node_count != config.node_count ||
                tables->params.max_adversaries != config.max_adversaries) {
                throw ConfigError("tables cache does not match code.P / code.s");
            }
        } else {
            tables = build_cyclic_tables(config.code_params(), config.tol);
            if (!config.tables_cache.empty()) save_cyclic_tables(*tables, config.tables_cache);
        }
        tables_ptr = &*tables;
    }

    const RoundContext ctx = make_round_context(config, tables_ptr);

    Rng init_rng = substream(config.seed, stream::kInit);
    std::vector<double> weights = init_weights(config.model, init_rng);

    const std::uint64_t attack_seed = config.attack_seed != 0 ? config.attack_seed : config.seed;
    const std::size_t shard_size = config.batch / config.node_count;

    std::vector<std::size_t> all_indices(dataset.count);
    std::iota(all_indices.begin(), all_indices.end(), std::size_t{0});
    std::vector<std::size_t> full_eval = all_indices;

    ExperimentResult result;
    result.rows.reserve(config.iterations);

    for (std::size_t round = 0; round < config.iterations; ++round) {
        const auto wall_start = Clock::now();

        Rng batch_rng = substream(config.seed, stream::kBatch, round);
        std::vector<std::size_t> pool = all_indices;
        std::shuffle(pool.begin(), pool.end(), batch_rng);

        std::vector<std::vector<std::size_t>> shards(config.node_count);
        for (std::size_t k = 0; k < config.node_count; ++k) {
            shards[k].assign(pool.begin() + static_cast<std::ptrdiff_t>(k * shard_size),
                             pool.begin() + static_cast<std::ptrdiff_t>((k + 1) * shard_size));
        }

        Rng attack_rng = substream(attack_seed, stream::kAttackSelect, round);
        Rng detect_rng = substream(config.seed, stream::kDetect, round);

        auto [update, transcript] = run_round(weights, data, shards, ctx, round, attack_rng,
                                              detect_rng);
        weights = sgd_step(weights, update, config.learning_rate, config.batch);

        MetricsRow row;
        row.round = round;
        row.wall_ms = config.deterministic_timings
                          ? 0.0
                          : static_cast<double>(elapsed_ns(wall_start)) / 1e6;
        row.compute_ns = transcript.compute_ns;
        row.encode_ns = transcript.encode_ns;
        row.decode_ns = transcript.decode_ns;
        row.loss = mean_loss(config.model, weights, data, full_eval);
        row.accuracy_value = accuracy(config.model, weights, data, full_eval);
        row.adversaries = transcript.adversaries;
        row.detected = transcript.detected;
        result.rows.push_back(std::move(row));

        if (opts.record_weights) result.weight_history.push_back(weights);
        if (opts.keep_transcripts || !config.transcript_path.empty()) {
            result.transcripts.push_back(std::move(transcript));
        }
    }

    result.final_weights = std::move(weights);
    return result;
}

std::string metrics_csv_header() {
    return "round,wall_ms,compute_ns,encode_ns,decode_ns,loss,accuracy,adversaries,detected";
}

std::string metrics_row_csv(const MetricsRow& row) {
    std::string out = std::to_string(row.round);
    out += ',' + format_double(row.wall_ms);
    out += ',' + std::to_string(row.compute_ns);
    out += ',' + std::to_string(row.encode_ns);
    out += ',' + std::to_string(row.decode_ns);
    out += ',' + format_double(row.loss);
    out += ',' + format_double(row.accuracy_value);
    out += ',' + join_indices(row.adversaries);
    out += ',' + join_indices(row.detected);
    return out;
}

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("write_metrics_csv: cannot open " + path);
    out << metrics_csv_header() << '\n';
    for (const auto& row : rows) out << metrics_row_csv(row) << '\n';
    if (!out) throw ConfigError("write_metrics_csv: write failed for " + path);
}

void write_transcripts_jsonl(const std::vector<RoundTranscript>& transcripts,
                             const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("write_transcripts_jsonl: cannot open " + path);
    for (const auto& t : transcripts) {
        nlohmann::json j;
        j["round"] = t.round_index;
        j["adversaries"] = t.adversaries;
        j["detected"] = t.detected;
        j["locator_residual"] = t.locator_residual;
        j["decode_ok"] = t.decode_ok;
        if (!t.decode_error.empty()) j["decode_error"] = t.decode_error;
        std::vector<std::string> digests;
        digests.reserve(t.message_digests.size());
        for (std::uint64_t d : t.message_digests) {
            char buf[19];
            std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
            digests.emplace_back(buf);
        }
        j["message_digests"] = digests;
        j["decoded_sum_digest"] = fnv1a64(t.decoded_sum.data(),
                                          t.decoded_sum.size() * sizeof(double));
        if (t.oracle_sum) {
            j["oracle_sum_digest"] =
                fnv1a64(t.oracle_sum->data(), t.oracle_sum->size() * sizeof(double));
        }
        if (t.decode_matches_oracle) j["decode_matches_oracle"] = *t.decode_matches_oracle;
        j["compute_ns"] = t.compute_ns;
        j["encode_ns"] = t.encode_ns;
        j["decode_ns"] = t.decode_ns;
        out << j.dump() << '\n';
    }
    if (!out) throw ConfigError("write_transcripts_jsonl: write failed for " + path);
}

}  // namespace draco

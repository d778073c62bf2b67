#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "draco/aggregation.hpp"
#include "draco/codes.hpp"
#include "draco/models.hpp"
#include "draco/synthetic.hpp"
#include "draco/threat.hpp"

namespace draco {

enum class AggregatorKind { Mean, GeometricMedian, DracoRepetition, DracoCyclic };

struct ExperimentConfig {
    // code
    std::size_t node_count = 6;
    std::size_t max_adversaries = 1;
    Scheme scheme = Scheme::Repetition;
    bool pack = true;           // fold cyclic messages into ceil(d/2) complex
    std::string tables_cache;   // optional DRCO1 path

    // attack
    AttackSpec attack;
    std::uint64_t attack_seed = 0;  // 0 = derive from the training seed

    // aggregation
    AggregatorKind aggregator = AggregatorKind::DracoRepetition;
    GeometricMedianOptions gm;

    // model and data
    ModelSpec model;
    DataKind data_kind = DataKind::Blobs;
    std::size_t data_count = 240;
    double data_noise_sd = 1.0;
    std::string data_cache;  // optional DRDS1 path

    // training
    std::size_t batch = 60;
    double learning_rate = 0.05;
    std::size_t iterations = 50;
    std::uint64_t seed = 1;

    Tolerances tol;

    // output
    std::string out_dir = ".";
    std::string transcript_path;
    bool deterministic_timings = false;  // zero timing fields for byte-stable files
    bool debug_oracle = false;           // record the oracle sum in transcripts

    CodeParams code_params() const;
    void validate() const;
};

// Everything that happened in one distributed round.
struct RoundTranscript {
    std::size_t round_index = 0;
    std::vector<std::size_t> adversaries;
    std::vector<std::uint64_t> message_digests;  // as received by the PS
    std::vector<std::size_t> detected;           // cyclic detection output
    double locator_residual = 0.0;
    bool decode_ok = true;
    std::string decode_error;
    std::vector<double> decoded_sum;
    std::optional<std::vector<double>> oracle_sum;
    std::optional<bool> decode_matches_oracle;
    std::uint64_t compute_ns = 0;
    std::uint64_t encode_ns = 0;
    std::uint64_t decode_ns = 0;
};

struct MetricsRow {
    std::size_t round = 0;
    double wall_ms = 0.0;
    std::uint64_t compute_ns = 0;
    std::uint64_t encode_ns = 0;
    std::uint64_t decode_ns = 0;
    double loss = 0.0;
    double accuracy_value = 0.0;
    std::vector<std::size_t> adversaries;
    std::vector<std::size_t> detected;
};

struct ExperimentResult {
    std::vector<MetricsRow> rows;
    std::vector<double> final_weights;
    std::vector<std::vector<double>> weight_history;  // when recording is on
    std::vector<RoundTranscript> transcripts;         // when keeping is on
};

// Prebuilt per-experiment state shared by all rounds.
struct RoundContext {
    const ExperimentConfig* config = nullptr;
    CodeParams params{1, 0, Scheme::Repetition};
    Assignment assignment;             // what each node computes
    const CyclicTables* tables = nullptr;  // cyclic aggregation only
};

RoundContext make_round_context(const ExperimentConfig& config, const CyclicTables* tables);

// One distributed round: workers compute their assigned gradient units over
// the shards, encode, adversaries corrupt their outbound messages, the PS
// decodes. Returns the summed-gradient update and the transcript.
std::pair<std::vector<double>, RoundTranscript> run_round(
    const std::vector<double>& weights, const DataView& data,
    const std::vector<std::vector<std::size_t>>& shards, const RoundContext& ctx,
    std::size_t round_index, Rng& attack_rng, Rng& detect_rng);

struct RunOptions {
    bool record_weights = false;
    bool keep_transcripts = false;
};

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& opts = {});

// Canonical reduction block for oracle sums and un-coded baselines: the
// repetition group size whenever it divides P, else 1. Keeping baseline and
// repetition-decode reduction trees identical is what makes bitwise
// trajectory comparisons meaningful.
std::size_t baseline_block(const CodeParams& params);

std::string metrics_csv_header();
std::string metrics_row_csv(const MetricsRow& row);
void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);
void write_transcripts_jsonl(const std::vector<RoundTranscript>& transcripts,
                             const std::string& path);

std::uint64_t fnv1a64(const void* data, std::size_t bytes);

}  // namespace draco

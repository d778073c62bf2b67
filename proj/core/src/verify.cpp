#include "draco/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>

#include "draco/majority.hpp"
#include "draco/tables_io.hpp"

namespace draco::verify {

namespace {

using Clock = std::chrono::steady_clock;

void for_each_subset_of_size(std::size_t universe, std::size_t size,
                             const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (size == 0) {
        fn({});
        return;
    }
    if (size > universe) return;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
        fn(pick);
        std::size_t i = size;
        while (i-- > 0) {
            if (pick[i] + (size - i) < universe) break;
            if (i == 0) return;
        }
        if (pick[i] + (size - i) >= universe) return;
        ++pick[i];
        for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
}

void for_each_subset_up_to(std::size_t universe, std::size_t max_size,
                           const std::function<void(const std::vector<std::size_t>&)>& fn) {
    for (std::size_t k = 0; k <= max_size; ++k) for_each_subset_of_size(universe, k, fn);
}

RealColumns random_units(std::size_t dim, std::size_t count, Rng& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    RealColumns cols(count);
    for (auto& col : cols) {
        col.resize(dim);
        for (auto& x : col) x = unit(rng);
    }
    return cols;
}

std::vector<std::size_t> feasible_adversary_counts(std::size_t node_count, Scheme scheme) {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; 2 * s + 1 <= node_count; ++s) {
        if (scheme == Scheme::Repetition && node_count % (2 * s + 1) != 0) continue;
        out.push_back(s);
    }
    return out;
}

double relative_gap(const std::vector<double>& got, const std::vector<double>& want) {
    double max_diff = 0.0;
    double max_mag = 1.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(got[i] - want[i]));
        max_mag = std::max(max_mag, std::abs(want[i]));
    }
    return max_diff / max_mag;
}

bool bytes_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::uint64_t median_ns(std::vector<std::uint64_t>& samples) {
    const std::size_t mid = samples.size() / 2;
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid),
                     samples.end());
    return samples[mid];
}

// Sweep a large buffer between timed repetitions so every cell is measured
// from cold caches; without this, small working sets stay cache-resident and
// the size scaling picks up the memory hierarchy instead of the algorithm.
void evict_caches() {
    static std::vector<std::uint64_t> junk(8 * 1024 * 1024);  // 64 MB
    for (auto& x : junk) x += 1;
}

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

ExactToleranceReport exact_tolerance_repetition(const std::vector<std::size_t>& node_counts,
                                                std::size_t seeds_per_case, std::size_t dim,
                                                std::uint64_t seed) {
    ExactToleranceReport report;
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t p : node_counts) {
        for (std::size_t s : feasible_adversary_counts(p, Scheme::Repetition)) {
            const CodeParams params(p, s, Scheme::Repetition);
            const Assignment assignment = repetition_assignment(params);
            Rng rng = substream(seed, mix64(p * 64 + s));
            for_each_subset_up_to(p, s, [&](const std::vector<std::size_t>& subset) {
                for (std::size_t trial = 0; trial < seeds_per_case; ++trial) {
                    const RealColumns units = random_units(dim, p, rng);
                    RealColumns messages(p);
                    for (std::size_t j = 0; j < p; ++j) {
                        RealColumns grads;
                        for (std::size_t k : assignment.per_node[j]) grads.push_back(units[k]);
                        messages[j] = encode_repetition(grads);
                    }
                    const auto oracle = blocked_sum(units, params.redundancy());
                    for (std::size_t adv : subset) {
                        for (auto& x : messages[adv]) x += unit(rng);
                    }
                    const auto decoded = decode_repetition(messages, params);
                    ++report.cases;
                    if (!bytes_equal(decoded, oracle)) ++report.failures;
                }
            });
        }
    }
    return report;
}

ExactToleranceReport exact_tolerance_cyclic(const std::vector<std::size_t>& node_counts,
                                            std::size_t seeds_per_case, std::size_t dim,
                                            double relative_tol, std::uint64_t seed) {
    ExactToleranceReport report;
    std::normal_distribution<double> unit(0.0, 1.0);
    const Tolerances tol;
    for (std::size_t p : node_counts) {
        for (std::size_t s : feasible_adversary_counts(p, Scheme::Cyclic)) {
            const CodeParams params(p, s, Scheme::Cyclic);
            const CyclicTables tables = build_cyclic_tables(params, tol);
            Rng rng = substream(seed, mix64(p * 64 + s + 4096));
            for_each_subset_up_to(p, s, [&](const std::vector<std::size_t>& subset) {
                for (std::size_t trial = 0; trial < seeds_per_case; ++trial) {
                    const RealColumns units = random_units(dim, p, rng);
                    ComplexColumns messages(p);
                    for (std::size_t j = 0; j < p; ++j) {
                        ComplexColumns grads;
                        for (std::size_t k : tables.assignment.per_node[j]) {
                            grads.push_back(pack_column(units[k]));
                        }
                        messages[j] = encode_cyclic(j, grads, tables);
                    }
                    const auto oracle = blocked_sum(units, 1);
                    for (std::size_t adv : subset) {
                        for (auto& z : messages[adv]) z += Complex{unit(rng), unit(rng)};
                    }
                    ++report.cases;
                    try {
                        const auto detection = detect_adversaries(messages, tables, rng, tol);
                        const auto decoded =
                            decode_cyclic(messages, tables, detection.adversaries);
                        const auto update = unpack_column(decoded, dim);
                        const double gap = relative_gap(update, oracle);
                        report.max_relative_error = std::max(report.max_relative_error, gap);
                        if (gap > relative_tol) ++report.failures;
                    } catch (const std::exception&) {
                        ++report.failures;
                    }
                }
            });
        }
    }
    return report;
}

DetectionReport detection_trials(const std::vector<std::size_t>& node_counts,
                                 const std::vector<std::size_t>& adversary_bounds,
                                 std::size_t total_trials, std::size_t dim, std::uint64_t seed) {
    DetectionReport report;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t p : node_counts) {
        for (std::size_t s : adversary_bounds) {
            if (2 * s + 1 <= p) cells.emplace_back(p, s);
        }
    }
    if (cells.empty() || total_trials == 0) return report;

    const Tolerances tol;
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto [p, s] = cells[c];
        const std::size_t quota =
            total_trials / cells.size() + (c < total_trials % cells.size() ? 1 : 0);
        const CyclicTables tables = build_cyclic_tables(CodeParams(p, s, Scheme::Cyclic), tol);
        Rng rng = substream(seed, mix64(0xdec0 + c));
        for (std::size_t trial = 0; trial < quota; ++trial) {
            const RealColumns units = random_units(dim, p, rng);
            ComplexColumns messages(p);
            for (std::size_t j = 0; j < p; ++j) {
                ComplexColumns grads;
                for (std::size_t k : tables.assignment.per_node[j]) {
                    grads.push_back(pack_column(units[k]));
                }
                messages[j] = encode_cyclic(j, grads, tables);
            }
            // Plant between 1 and s corrupted columns (0 occasionally).
            std::uniform_int_distribution<std::size_t> count_dist(0, s);
            const std::size_t planted_count = std::max<std::size_t>(
                trial % 8 == 0 ? 0 : 1, count_dist(rng));
            std::vector<std::size_t> pool(p);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<std::size_t> planted(pool.begin(),
                                             pool.begin() +
                                                 static_cast<std::ptrdiff_t>(planted_count));
            std::sort(planted.begin(), planted.end());
            for (std::size_t adv : planted) {
                for (auto& z : messages[adv]) z += Complex{unit(rng), unit(rng)};
            }
            ++report.trials;
            try {
                const auto detection = detect_adversaries(messages, tables, rng, tol);
                if (detection.adversaries.size() > s) ++report.oversize_returned;
                if (detection.adversaries == planted) ++report.exact;
            } catch (const TooManyAdversaries&) {
                ++report.too_many_raised;
            }
        }
    }
    return report;
}

ExperimentConfig equivalence_base_config(std::uint64_t seed) {
    ExperimentConfig config;
    config.node_count = 15;
    config.max_adversaries = 1;
    config.scheme = Scheme::Repetition;
    config.model.kind = ModelKind::LogisticRegression;
    config.model.feature_dim = 4;
    config.data_kind = DataKind::Blobs;
    config.data_count = 240;
    config.data_noise_sd = 1.0;
    config.batch = 60;
    config.learning_rate = 0.05;
    config.iterations = 200;
    config.seed = seed;
    config.deterministic_timings = true;
    return config;
}

EquivalenceReport trajectory_equivalence(Scheme scheme, std::size_t code_s, AttackKind attack,
                                         std::size_t adversaries_per_round,
                                         std::size_t iterations, std::uint64_t seed) {
    ExperimentConfig attacked = equivalence_base_config(seed);
    attacked.scheme = scheme;
    attacked.max_adversaries = code_s;
    attacked.iterations = iterations;
    attacked.aggregator = scheme == Scheme::Repetition ? AggregatorKind::DracoRepetition
                                                       : AggregatorKind::DracoCyclic;
    attacked.attack.kind = attack;
    attacked.attack.count = adversaries_per_round;

    ExperimentConfig baseline = attacked;
    baseline.aggregator = AggregatorKind::Mean;
    baseline.attack = AttackSpec{};

    RunOptions opts;
    opts.record_weights = true;
    const ExperimentResult attacked_run = run_experiment(attacked, opts);
    const ExperimentResult baseline_run = run_experiment(baseline, opts);

    EquivalenceReport report;
    report.ran = true;
    report.iterations = iterations;
    for (std::size_t t = 0; t < iterations; ++t) {
        const auto& got = attacked_run.weight_history[t];
        const auto& want = baseline_run.weight_history[t];
        if (!bytes_equal(got, want)) report.bitwise = false;
        report.max_relative_error =
            std::max(report.max_relative_error, relative_gap(got, want));
    }
    return report;
}

GmFailureReport gm_failure(std::size_t iterations, std::uint64_t seed) {
    ExperimentConfig base = equivalence_base_config(seed);
    base.scheme = Scheme::Cyclic;
    base.max_adversaries = 2;
    base.iterations = iterations;

    ExperimentConfig baseline = base;
    baseline.aggregator = AggregatorKind::Mean;

    ExperimentConfig gm = base;
    gm.aggregator = AggregatorKind::GeometricMedian;
    gm.attack.kind = AttackKind::Constant;
    gm.attack.constant_value = -100.0;
    gm.attack.count = 2;

    ExperimentConfig draco = base;
    draco.aggregator = AggregatorKind::DracoCyclic;
    draco.attack = gm.attack;

    GmFailureReport report;
    report.baseline_loss = run_experiment(baseline).rows.back().loss;
    report.gm_loss = run_experiment(gm).rows.back().loss;
    report.draco_loss = run_experiment(draco).rows.back().loss;
    return report;
}

BenchCell bench_cell(Scheme scheme, std::size_t node_count, std::size_t max_adversaries,
                     std::size_t dim, std::size_t repetitions, std::size_t gm_iters,
                     std::uint64_t seed) {
    BenchCell cell;
    cell.scheme = scheme;
    cell.node_count = node_count;
    cell.max_adversaries = max_adversaries;
    cell.dim = dim;

    const CodeParams params(node_count, max_adversaries, scheme);
    Rng rng = substream(seed, mix64(node_count * 131 + max_adversaries));
    const RealColumns units = random_units(dim, node_count, rng);

    volatile double sink = 0.0;
    std::vector<std::uint64_t> encode_samples;
    std::vector<std::uint64_t> decode_samples;
    std::vector<std::uint64_t> gm_samples;
    const std::size_t runs = std::max<std::size_t>(repetitions, 1);

    if (scheme == Scheme::Repetition) {
        const Assignment assignment = repetition_assignment(params);
        std::vector<RealColumns> node_grads(node_count);
        for (std::size_t j = 0; j < node_count; ++j) {
            for (std::size_t k : assignment.per_node[j]) node_grads[j].push_back(units[k]);
        }
        RealColumns messages(node_count);
        for (std::size_t rep = 0; rep < runs + 2; ++rep) {
            evict_caches();
            const auto start = Clock::now();
            for (std::size_t j = 0; j < node_count; ++j) {
                messages[j] = encode_repetition(node_grads[j]);
            }
            const auto ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
                    .count());
            if (rep >= 2) encode_samples.push_back(ns);
        }
        for (std::size_t rep = 0; rep < runs + 2; ++rep) {
            evict_caches();
            const auto start = Clock::now();
            const auto decoded = decode_repetition(messages, params);
            const auto ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
                    .count());
            sink = sink + decoded[0];
            if (rep >= 2) decode_samples.push_back(ns);
        }
    } else {
        const CyclicTables tables = build_cyclic_tables(params);
        ComplexColumns messages(node_count);
        for (std::size_t rep = 0; rep < runs + 2; ++rep) {
            evict_caches();
            const auto start = Clock::now();
            for (std::size_t j = 0; j < node_count; ++j) {
                ComplexColumns grads;
                grads.reserve(tables.assignment.per_node[j].size());
                for (std::size_t k : tables.assignment.per_node[j]) {
                    grads.push_back(pack_column(units[k]));
                }
                messages[j] = encode_cyclic(j, grads, tables);
            }
            const auto ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
                    .count());
            if (rep >= 2) encode_samples.push_back(ns);
        }
        for (std::size_t rep = 0; rep < runs + 2; ++rep) {
            Rng detect_rng = substream(seed, stream::kDetect, rep);
            evict_caches();
            const auto start = Clock::now();
            const auto detection = detect_adversaries(messages, tables, detect_rng);
            const auto decoded = decode_cyclic(messages, tables, detection.adversaries);
            const auto update = unpack_column(decoded, dim);
            const auto ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
                    .count());
            sink = sink + update[0];
            if (rep >= 2) decode_samples.push_back(ns);
        }
    }

    if (gm_iters > 0) {
        GeometricMedianOptions opts;
        opts.max_iters = gm_iters;
        opts.step_tol = 0.0;  // force the full iteration budget
        for (std::size_t rep = 0; rep < runs + 2; ++rep) {
            evict_caches();
            const auto start = Clock::now();
            const auto gm = geometric_median_detailed(units, opts);
            const auto ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
                    .count());
            sink = sink + gm.point[0];
            if (rep >= 2) gm_samples.push_back(ns);
        }
    }
    (void)sink;

    cell.encode_ns = median_ns(encode_samples);
    cell.decode_ns = median_ns(decode_samples);
    cell.gm_ns = gm_samples.empty() ? 0 : median_ns(gm_samples);
    return cell;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

namespace {

Check make_check(const std::string& name, bool pass, const std::string& detail) {
    return Check{name, pass, detail};
}

Check check_replication(std::uint64_t) {
    for (std::size_t p = 1; p <= 12; ++p) {
        for (const Scheme scheme : {Scheme::Repetition, Scheme::Cyclic}) {
            for (std::size_t s : feasible_adversary_counts(p, scheme)) {
                const CodeParams params(p, s, scheme);
                const Assignment a = scheme == Scheme::Repetition
                                         ? repetition_assignment(params)
                                         : cyclic_assignment(params);
                std::vector<std::size_t> replication(p, 0);
                for (const auto& set : a.per_node) {
                    if (set.size() != params.redundancy()) {
                        return make_check("replication-invariant", false,
                                          "set size != 2s+1 at P=" + std::to_string(p));
                    }
                    for (std::size_t k : set) ++replication[k];
                }
                for (std::size_t k = 0; k < p; ++k) {
                    if (replication[k] != params.redundancy()) {
                        return make_check("replication-invariant", false,
                                          "index replicated wrong count at P=" +
                                              std::to_string(p));
                    }
                }
                if (redundancy_ratio(a) != static_cast<double>(params.redundancy())) {
                    return make_check("replication-invariant", false,
                                      "redundancy ratio != 2s+1 at P=" + std::to_string(p));
                }
            }
        }
    }
    return make_check("replication-invariant", true,
                      "replication = 2s+1 for both schemes, P <= 12");
}

Check check_constructor_bounds(std::uint64_t) {
    std::size_t rejected = 0;
    for (std::size_t p : {1, 2, 3, 5, 8, 15}) {
        const std::size_t bad = (p - 1) / 2 + 1;
        try {
            (void)CodeParams(p, bad, Scheme::Cyclic);
        } catch (const InvalidParams&) {
            ++rejected;
        }
    }
    bool divisibility = false;
    try {
        (void)CodeParams(8, 1, Scheme::Repetition);  // 3 does not divide 8
    } catch (const InvalidParams&) {
        divisibility = true;
    }
    const bool pass = rejected == 6 && divisibility;
    return make_check("constructor-bounds", pass,
                      "s > (P-1)/2 rejected " + std::to_string(rejected) +
                          "/6, repetition divisibility enforced");
}

Check check_weight_support(std::uint64_t) {
    for (std::size_t p : {5, 7, 9, 12}) {
        for (std::size_t s : feasible_adversary_counts(p, Scheme::Cyclic)) {
            const CodeParams params(p, s, Scheme::Cyclic);
            const CyclicTables tables = build_cyclic_tables(params);
            for (std::size_t row = 0; row < p; ++row) {
                const auto support = cyclic_weight_row_support(params, row);
                double row_max = 0.0;
                for (std::size_t col = 0; col < p; ++col) {
                    row_max = std::max(row_max, std::abs(tables.weights.at(row, col)));
                }
                for (std::size_t col = 0; col < p; ++col) {
                    const bool in_support =
                        std::binary_search(support.begin(), support.end(), col);
                    if (!in_support &&
                        std::abs(tables.weights.at(row, col)) > 1e-10 * row_max) {
                        return make_check("weight-support", false,
                                          "nonzero off-support entry at P=" + std::to_string(p) +
                                              " s=" + std::to_string(s));
                    }
                }
            }
        }
    }
    return make_check("weight-support", true, "off-support |W| <= 1e-10 * row max");
}

Check check_weight_span(std::uint64_t) {
    const CodeParams params(7, 2, Scheme::Cyclic);
    const CyclicTables tables = build_cyclic_tables(params);
    const std::size_t p = params.node_count;
    double worst = 0.0;
    bool ok = true;
    for_each_subset_up_to(p, 2 * params.max_adversaries,
                          [&](const std::vector<std::size_t>& removed) {
        std::vector<bool> out(p, false);
        for (std::size_t v : removed) out[v] = true;
        std::vector<std::size_t> kept;
        for (std::size_t v = 0; v < p; ++v) {
            if (!out[v]) kept.push_back(v);
        }
        ComplexVector rhs(p - 2 * params.max_adversaries);
        rhs.back() = 1.0;
        const std::vector<std::size_t> anchor(kept.begin(),
                                              kept.begin() +
                                                  static_cast<std::ptrdiff_t>(rhs.size()));
        ComplexVector combiner;
        try {
            combiner = solve_square(tables.idft_top.select_cols(anchor), rhs);
        } catch (const SingularMatrix&) {
            ok = false;
            return;
        }
        // || W_{.,anchor} * b - 1 ||
        double err = 0.0;
        for (std::size_t row = 0; row < p; ++row) {
            Complex acc{};
            for (std::size_t t = 0; t < anchor.size(); ++t) {
                acc += tables.weights.at(row, anchor[t]) * combiner[t];
            }
            err += std::norm(acc - Complex{1.0, 0.0});
        }
        worst = std::max(worst, std::sqrt(err));
    });
    ok = ok && worst <= 1e-8;
    return make_check("weight-span", ok,
                      "max ||W_U b - 1|| = " + format_sci(worst) + " over removed subsets");
}

Check check_syndrome_orthogonality(std::uint64_t seed) {
    std::normal_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t p : {5, 7, 11}) {
        for (std::size_t s : {1, 2}) {
            if (2 * s + 1 > p) continue;
            const CyclicTables tables =
                build_cyclic_tables(CodeParams(p, s, Scheme::Cyclic));
            Rng rng = substream(seed, mix64(p * 100 + s));
            for (std::size_t trial = 0; trial < 20; ++trial) {
                const std::size_t dim = 6;
                const RealColumns units = random_units(dim, p, rng);
                ComplexColumns z(p);
                for (std::size_t j = 0; j < p; ++j) {
                    ComplexColumns grads;
                    for (std::size_t k : tables.assignment.per_node[j]) {
                        grads.push_back(pack_column(units[k]));
                    }
                    z[j] = encode_cyclic(j, grads, tables);
                }
                const std::size_t half = (dim + 1) / 2;
                std::vector<double> probe(half);
                for (auto& x : probe) x = 1.0 + unit(rng);
                ComplexVector probed(p);
                for (std::size_t j = 0; j < p; ++j) {
                    Complex acc{};
                    for (std::size_t i = 0; i < half; ++i) acc += probe[i] * z[j][i];
                    probed[j] = acc;
                }
                ComplexVector syndrome(2 * s);
                for (std::size_t m = 0; m < 2 * s; ++m) {
                    Complex acc{};
                    for (std::size_t j = 0; j < p; ++j) {
                        acc += probed[j] * std::conj(tables.idft_bottom.at(m, j));
                    }
                    syndrome[m] = acc;
                }
                const double ratio = norm2(syndrome) / std::max(norm2(probed), 1e-300);
                worst = std::max(worst, ratio);
            }
        }
    }
    return make_check("syndrome-orthogonality", worst <= 1e-8,
                      "max ||f Z Cr'|| / ||f Z|| = " + format_sci(worst));
}

Check check_locator_recurrence(std::uint64_t seed) {
    const std::size_t p = 11;
    const std::size_t s = 3;
    const CyclicTables tables = build_cyclic_tables(CodeParams(p, s, Scheme::Cyclic));
    Rng rng = substream(seed, 0x10ca);
    std::normal_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 5;
        const RealColumns units = random_units(dim, p, rng);
        ComplexColumns messages(p);
        for (std::size_t j = 0; j < p; ++j) {
            ComplexColumns grads;
            for (std::size_t k : tables.assignment.per_node[j]) {
                grads.push_back(pack_column(units[k]));
            }
            messages[j] = encode_cyclic(j, grads, tables);
        }
        const std::size_t planted = trial % (s + 1);  // includes rank-deficient cases
        std::vector<std::size_t> pool(p);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t i = 0; i < planted; ++i) {
            for (auto& z : messages[pool[i]]) z += Complex{unit(rng), unit(rng)};
        }
        const auto detection = detect_adversaries(messages, tables, rng);
        worst = std::max(worst, detection.locator_residual);
    }
    return make_check("locator-recurrence", worst <= 1e-6,
                      "max Hankel residual = " + format_sci(worst) +
                          " incl. rank-deficient syndromes");
}

Check check_majority_exhaustive(std::uint64_t) {
    const std::size_t symbols = 3;
    std::size_t checked = 0;
    for (std::size_t len = 1; len <= 9; ++len) {
        std::vector<int> word(len, 0);
        while (true) {
            std::size_t counts[3] = {0, 0, 0};
            for (int v : word) ++counts[static_cast<std::size_t>(v)];
            int best = 0;
            for (int c = 1; c < 3; ++c) {
                if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
                    best = c;
                }
            }
            if (2 * counts[static_cast<std::size_t>(best)] > len) {
                const auto it = streaming_majority(word.begin(), word.end(),
                                                   [](int a, int b) { return a == b; });
                if (*it != best) {
                    return make_check("majority-exhaustive", false,
                                      "disagrees with exhaustive counting at length " +
                                          std::to_string(len));
                }
                ++checked;
            }
            std::size_t pos = 0;
            while (pos < len && word[pos] == static_cast<int>(symbols) - 1) {
                word[pos] = 0;
                ++pos;
            }
            if (pos == len) break;
            ++word[pos];
        }
    }
    bool empty_throws = false;
    try {
        std::vector<int> empty;
        (void)streaming_majority(empty.begin(), empty.end(),
                                 [](int a, int b) { return a == b; });
    } catch (const EmptySequence&) {
        empty_throws = true;
    }
    return make_check("majority-exhaustive", empty_throws,
                      std::to_string(checked) +
                          " majority-bearing 3-symbol sequences of length <= 9 agree");
}

Check check_bound_sharpness(std::uint64_t seed) {
    const CodeParams params(6, 1, Scheme::Repetition);
    const Assignment assignment = repetition_assignment(params);
    Rng rng = substream(seed, 0x6a0);
    const std::size_t dim = 7;
    const RealColumns units = random_units(dim, 6, rng);
    RealColumns messages(6);
    for (std::size_t j = 0; j < 6; ++j) {
        RealColumns grads;
        for (std::size_t k : assignment.per_node[j]) grads.push_back(units[k]);
        messages[j] = encode_repetition(grads);
    }
    const auto oracle = blocked_sum(units, params.redundancy());
    // Two colluders in the same group send identical forgeries: they outvote
    // the lone honest replica, so s = 1 is tight.
    const std::vector<double> forgery(dim, 41.0);
    messages[0] = forgery;
    messages[1] = forgery;
    const auto decoded = decode_repetition(messages, params);
    const bool mismatch = !bytes_equal(decoded, oracle);
    return make_check("bound-sharpness", mismatch,
                      "same-group 2-collusion defeats s=1 repetition decode");
}

Check check_packing(std::uint64_t seed) {
    Rng rng = substream(seed, 0xbac5);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t dim = 1; dim <= 8; ++dim) {
        std::vector<double> column(dim);
        for (auto& x : column) x = unit(rng);
        if (unpack_column(pack_column(column), dim) != column) {
            return make_check("packing", false,
                              "round trip failed at dim " + std::to_string(dim));
        }
    }

    // Full pipeline with packing against the same pipeline without it.
    const std::size_t p = 7;
    const std::size_t dim = 9;
    const CyclicTables tables = build_cyclic_tables(CodeParams(p, 2, Scheme::Cyclic));
    const RealColumns units = random_units(dim, p, rng);
    const auto oracle = blocked_sum(units, 1);
    double worst = 0.0;
    for (const bool packed : {true, false}) {
        ComplexColumns messages(p);
        for (std::size_t j = 0; j < p; ++j) {
            ComplexColumns grads;
            for (std::size_t k : tables.assignment.per_node[j]) {
                grads.push_back(packed ? pack_column(units[k]) : promote_column(units[k]));
            }
            messages[j] = encode_cyclic(j, grads, tables);
        }
        for (auto& z : messages[3]) z += Complex{unit(rng), unit(rng)};
        Rng detect_rng = substream(seed, 0xbac6);
        const auto detection = detect_adversaries(messages, tables, detect_rng);
        const auto decoded = decode_cyclic(messages, tables, detection.adversaries);
        const auto update = packed ? unpack_column(decoded, dim) : real_part(decoded);
        worst = std::max(worst, relative_gap(update, oracle));
    }
    return make_check("packing", worst <= 1e-8,
                      "packed and unpacked pipelines agree to " + format_sci(worst));
}

Check check_dft_unitary(std::uint64_t) {
    double worst_scaled = 0.0;
    for (std::size_t p = 1; p <= 64; ++p) {
        const ComplexMatrix c = dft_matrix(p);
        const ComplexMatrix gram = multiply(c, c.adjoint());
        double err = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t k = 0; k < p; ++k) {
                const Complex want = r == k ? Complex{1.0, 0.0} : Complex{};
                err = std::max(err, std::abs(gram.at(r, k) - want));
            }
        }
        worst_scaled = std::max(worst_scaled, err / (1e-12 * static_cast<double>(p)));
    }
    return make_check("dft-unitary", worst_scaled <= 1.0,
                      "max |C C' - I| within 1e-12 * P for P <= 64");
}

Check check_vandermonde_independence(std::uint64_t seed) {
    double smallest = 1.0;
    for (std::size_t p : {8, 16, 24, 32}) {
        for (std::size_t s : {1, 2, 3}) {
            if (2 * s + 1 > p) continue;
            const ComplexMatrix top = dft_matrix(p).top_rows(p - 2 * s);
            Rng rng = substream(seed, mix64(p * 17 + s));
            const std::size_t take = p - 2 * s;
            std::vector<std::size_t> pool(p);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            for (std::size_t trial = 0; trial < 50; ++trial) {
                std::vector<std::size_t> cols;
                if (trial == 0) {
                    cols.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
                } else {
                    std::shuffle(pool.begin(), pool.end(), rng);
                    cols.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
                    std::sort(cols.begin(), cols.end());
                }
                const auto sv = singular_values(top.select_cols(cols));
                smallest = std::min(smallest, sv.back());
            }
        }
    }
    return make_check("vandermonde-independence", smallest > 1e-10,
                      "min sigma over column subsets = " + format_sci(smallest));
}

Check check_solver_round_trip(std::uint64_t seed) {
    Rng rng = substream(seed, 0x501e);
    std::normal_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10;
        ComplexMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m.at(r, c) = Complex{unit(rng), unit(rng)} + (r == c ? Complex{4.0, 0.0}
                                                                     : Complex{});
            }
        }
        ComplexVector x_true(n);
        for (auto& z : x_true) z = Complex{unit(rng), unit(rng)};
        const ComplexVector rhs = matvec(m, x_true);
        const ComplexVector x = solve_square(m, rhs);
        ComplexVector diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - x_true[i];
        worst = std::max(worst, norm2(diff) / std::max(norm2(x_true), 1e-300));

        const ComplexVector x_mn = min_norm_solve(m, rhs);
        for (std::size_t i = 0; i < n; ++i) diff[i] = x_mn[i] - x[i];
        worst = std::max(worst, norm2(diff) / std::max(norm2(x), 1e-300));
    }
    return make_check("solver-round-trip", worst <= 1e-8,
                      "max relative solve error = " + format_sci(worst));
}

}  // namespace

std::vector<Check> verify_codes(std::uint64_t seed) {
    std::vector<Check> checks;
    checks.push_back(check_replication(seed));
    checks.push_back(check_constructor_bounds(seed));

    {
        const auto report = exact_tolerance_repetition({2, 3, 4, 5, 6, 7, 8}, 200, 9, seed);
        checks.push_back(make_check(
            "repetition-exact-recovery", report.failures == 0,
            std::to_string(report.cases) + " cases, " + std::to_string(report.failures) +
                " bitwise mismatches"));
    }
    {
        const auto report = exact_tolerance_cyclic({2, 3, 4, 5, 6, 7, 8}, 200, 9, 1e-8, seed);
        checks.push_back(make_check(
            "cyclic-exact-recovery", report.failures == 0,
            std::to_string(report.cases) + " cases, max relative error " +
                format_sci(report.max_relative_error)));
    }

    checks.push_back(check_weight_support(seed));
    checks.push_back(check_weight_span(seed));
    checks.push_back(check_syndrome_orthogonality(seed));
    checks.push_back(check_locator_recurrence(seed));
    checks.push_back(check_majority_exhaustive(seed));
    checks.push_back(check_bound_sharpness(seed));
    checks.push_back(check_packing(seed));
    checks.push_back(check_dft_unitary(seed));
    checks.push_back(check_vandermonde_independence(seed));
    checks.push_back(check_solver_round_trip(seed));
    return checks;
}

std::vector<Check> identity_checks(std::uint64_t seed) {
    return {check_syndrome_orthogonality(seed), check_locator_recurrence(seed),
            check_majority_exhaustive(seed)};
}

std::vector<Check> verify_detection(std::size_t trials, std::uint64_t seed) {
    const auto report = detection_trials({5, 7, 11, 15}, {1, 2, 3}, trials, 6, seed);
    const double rate =
        report.trials == 0 ? 0.0
                           : static_cast<double>(report.exact) / static_cast<double>(report.trials);
    std::vector<Check> checks;
    checks.push_back(make_check("detection-exact-rate", rate >= 0.999,
                                std::to_string(report.exact) + "/" +
                                    std::to_string(report.trials) + " exact (" +
                                    format_sci(rate) + ")"));
    checks.push_back(make_check("detection-size-bound",
                                report.oversize_returned == 0,
                                std::to_string(report.oversize_returned) +
                                    " oversize sets returned, " +
                                    std::to_string(report.too_many_raised) +
                                    " TooManyAdversaries raised"));
    return checks;
}

std::vector<Check> verify_equivalence(std::uint64_t seed) {
    std::vector<Check> checks;
    const std::size_t iters = 200;

    struct Cell {
        Scheme scheme;
        std::size_t code_s;
        std::size_t actual;
    };
    const std::vector<Cell> rep_cells = {{Scheme::Repetition, 1, 1},
                                         {Scheme::Repetition, 7, 3},
                                         {Scheme::Repetition, 7, 5}};
    const std::vector<Cell> cyc_cells = {{Scheme::Cyclic, 1, 1},
                                         {Scheme::Cyclic, 3, 3},
                                         {Scheme::Cyclic, 5, 5}};

    for (const AttackKind attack : {AttackKind::ReverseGradient, AttackKind::Constant}) {
        const std::string attack_name =
            attack == AttackKind::ReverseGradient ? "reverse" : "constant";
        for (const auto& cell : rep_cells) {
            const auto report =
                trajectory_equivalence(cell.scheme, cell.code_s, attack, cell.actual, iters, seed);
            checks.push_back(make_check(
                "equivalence-rep-" + attack_name + "-a" + std::to_string(cell.actual),
                report.bitwise, "bitwise over " + std::to_string(iters) + " iterates"));
        }
        for (const auto& cell : cyc_cells) {
            const auto report =
                trajectory_equivalence(cell.scheme, cell.code_s, attack, cell.actual, iters, seed);
            checks.push_back(make_check(
                "equivalence-cyc-" + attack_name + "-a" + std::to_string(cell.actual),
                report.max_relative_error <= 1e-6,
                "max per-iterate relative error " + format_sci(report.max_relative_error)));
        }
    }

    const auto gm = gm_failure(iters, seed);
    checks.push_back(make_check(
        "gm-failure-direction",
        gm.gm_loss > gm.baseline_loss + 1e-4 &&
            std::abs(gm.draco_loss - gm.baseline_loss) <=
                1e-6 * std::max(1.0, gm.baseline_loss),
        "baseline " + format_sci(gm.baseline_loss) + ", gm " + format_sci(gm.gm_loss) +
            ", draco " + format_sci(gm.draco_loss)));
    return checks;
}

}  // namespace draco::verify

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "draco/harness.hpp"

namespace draco::verify {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Exhaustive exact-recovery sweep: for each node count, each feasible s,
// every adversary subset of size <= s, `seeds_per_case` random gradient
// blocks with random noise on the subset columns. Repetition compares
// byte-for-byte against the blocked oracle sum; cyclic tracks the maximum
// relative error.
struct ExactToleranceReport {
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_relative_error = 0.0;
};

ExactToleranceReport exact_tolerance_repetition(const std::vector<std::size_t>& node_counts,
                                                std::size_t seeds_per_case, std::size_t dim,
                                                std::uint64_t seed);
ExactToleranceReport exact_tolerance_cyclic(const std::vector<std::size_t>& node_counts,
                                            std::size_t seeds_per_case, std::size_t dim,
                                            double relative_tol, std::uint64_t seed);

// Randomized detection trials over a (P, s) grid with planted noise columns
// of random count <= s.
struct DetectionReport {
    std::size_t trials = 0;
    std::size_t exact = 0;
    std::size_t oversize_returned = 0;
    std::size_t too_many_raised = 0;
};

DetectionReport detection_trials(const std::vector<std::size_t>& node_counts,
                                 const std::vector<std::size_t>& adversary_bounds,
                                 std::size_t total_trials, std::size_t dim, std::uint64_t seed);

// Paired training runs: an attacked DRACO run against the adversary-free
// mean-aggregated baseline, model states compared per iterate.
struct EquivalenceReport {
    bool ran = false;
    bool bitwise = true;
    double max_relative_error = 0.0;
    std::size_t iterations = 0;
};

ExperimentConfig equivalence_base_config(std::uint64_t seed);
EquivalenceReport trajectory_equivalence(Scheme scheme, std::size_t code_s, AttackKind attack,
                                         std::size_t adversaries_per_round,
                                         std::size_t iterations, std::uint64_t seed);

// Constant-adversary failure direction: GM-SGD vs the adversary-free
// baseline vs DRACO (cyclic, s=2) under kappa = -100, 2 adversaries, P=15.
struct GmFailureReport {
    double baseline_loss = 0.0;
    double gm_loss = 0.0;
    double draco_loss = 0.0;
};

GmFailureReport gm_failure(std::size_t iterations, std::uint64_t seed);

// Median stage timings for one (scheme, P, s, d) cell; encode covers all P
// nodes, decode the full PS stage, gm a forced `gm_iters`-iteration Weiszfeld
// aggregation over the same messages.
struct BenchCell {
    Scheme scheme = Scheme::Repetition;
    std::size_t node_count = 0;
    std::size_t max_adversaries = 0;
    std::size_t dim = 0;
    std::uint64_t encode_ns = 0;
    std::uint64_t decode_ns = 0;
    std::uint64_t gm_ns = 0;
};

BenchCell bench_cell(Scheme scheme, std::size_t node_count, std::size_t max_adversaries,
                     std::size_t dim, std::size_t repetitions, std::size_t gm_iters,
                     std::uint64_t seed);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// CLI suites; every check carries a pass flag and a one-line detail.
std::vector<Check> verify_codes(std::uint64_t seed);
std::vector<Check> verify_detection(std::size_t trials, std::uint64_t seed);
std::vector<Check> verify_equivalence(std::uint64_t seed);

// The three identities the decoders rest on, on their own: syndrome
// orthogonality, the locator recurrence under min-norm solves, and streaming
// majority against exhaustive counting.
std::vector<Check> identity_checks(std::uint64_t seed);

}  // namespace draco::verify

#pragma once

#include <cstddef>
#include <vector>

#include "draco/codes.hpp"
#include "draco/rng.hpp"

namespace draco {

// Arithmetic mean of the messages, summed in message order.
std::vector<double> aggregate_mean(const RealColumns& messages);

struct GeometricMedianOptions {
    std::size_t max_iters = 100;
    double step_tol = 1e-8;
    // Smoothing for anchor-point coincidence: distances are
    // sqrt(|y - m|^2 + eps^2).
    double smoothing = 1e-12;
};

struct GeometricMedianResult {
    std::vector<double> point;
    std::size_t iterations = 0;
    // Smoothed objective sum_j sqrt(|y - m_j|^2 + eps^2) per iteration,
    // including the starting point; non-increasing by construction.
    std::vector<double> objective_trace;
};

GeometricMedianResult geometric_median_detailed(const RealColumns& messages,
                                                const GeometricMedianOptions& opts = {});

std::vector<double> aggregate_geometric_median(const RealColumns& messages,
                                               std::size_t max_iters = 100,
                                               double step_tol = 1e-8);

// DRACO aggregation returns the SUM of the gradient units (the trainer
// divides by the batch size).
std::vector<double> aggregate_draco_repetition(const RealColumns& received,
                                               const CodeParams& params);

// Detect, then decode from the trusted columns. `real_dim` is the unpacked
// model dimension; `packed` says whether columns were transmitted folded.
std::vector<double> aggregate_draco_cyclic(const ComplexColumns& received,
                                           const CyclicTables& tables, std::size_t real_dim,
                                           bool packed, Rng& detect_rng,
                                           const Tolerances& tol = {});

}  // namespace draco

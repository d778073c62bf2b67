#include "draco/aggregation.hpp"

#include <cmath>

#include "draco/errors.hpp"

namespace draco {

std::vector<double> aggregate_mean(const RealColumns& messages) {
    if (messages.empty()) throw EmptySequence("aggregate_mean: no messages");
    std::vector<double> acc = messages.front();
    for (std::size_t j = 1; j < messages.size(); ++j) {
        const auto& m = messages[j];
        if (m.size() != acc.size()) throw DimensionMismatch("aggregate_mean: ragged messages");
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m[i];
    }
    const double inv = 1.0 / static_cast<double>(messages.size());
    for (auto& x : acc) x *= inv;
    return acc;
}

namespace {

double smoothed_objective(const std::vector<double>& y, const RealColumns& messages, double eps) {
    double total = 0.0;
    for (const auto& m : messages) {
        double sq = eps * eps;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - m[i];
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total;
}

}  // namespace

GeometricMedianResult geometric_median_detailed(const RealColumns& messages,
                                                const GeometricMedianOptions& opts) {
    if (messages.empty()) throw EmptySequence("geometric_median: no messages");
    if (opts.max_iters < 1 || opts.step_tol < 0) {
        throw InvalidParams("geometric_median: bad options");
    }
    const std::size_t dim = messages.front().size();
    for (const auto& m : messages) {
        if (m.size() != dim) throw DimensionMismatch("geometric_median: ragged messages");
    }

    GeometricMedianResult result;
    result.point = aggregate_mean(messages);
    result.objective_trace.push_back(smoothed_objective(result.point, messages, opts.smoothing));

    std::vector<double> next(dim);
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        double weight_sum = 0.0;
        for (const auto& m : messages) {
            double sq = opts.smoothing * opts.smoothing;
            for (std::size_t i = 0; i < dim; ++i) {
                const double d = result.point[i] - m[i];
                sq += d * d;
            }
            const double w = 1.0 / std::sqrt(sq);
            weight_sum += w;
            for (std::size_t i = 0; i < dim; ++i) next[i] += w * m[i];
        }
        for (std::size_t i = 0; i < dim; ++i) next[i] /= weight_sum;

        double step_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = next[i] - result.point[i];
            step_sq += d * d;
        }
        result.point = next;
        result.iterations = iter + 1;
        result.objective_trace.push_back(
            smoothed_objective(result.point, messages, opts.smoothing));
        if (std::sqrt(step_sq) < opts.step_tol) break;
    }
    return result;
}

std::vector<double> aggregate_geometric_median(const RealColumns& messages, std::size_t max_iters,
                                               double step_tol) {
    GeometricMedianOptions opts;
    opts.max_iters = max_iters;
    opts.step_tol = step_tol;
    return geometric_median_detailed(messages, opts).point;
}

std::vector<double> aggregate_draco_repetition(const RealColumns& received,
                                               const CodeParams& params) {
    return decode_repetition(received, params);
}

std::vector<double> aggregate_draco_cyclic(const ComplexColumns& received,
                                           const CyclicTables& tables, std::size_t real_dim,
                                           bool packed, Rng& detect_rng, const Tolerances& tol) {
    const DetectionResult detection = detect_adversaries(received, tables, detect_rng, tol);
    const ComplexVector decoded = decode_cyclic(received, tables, detection.adversaries);
    return packed ? unpack_column(decoded, real_dim) : real_part(decoded);
}

}  // namespace draco

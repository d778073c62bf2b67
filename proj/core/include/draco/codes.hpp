#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "draco/numerics.hpp"
#include "draco/rng.hpp"

namespace draco {

enum class Scheme { Repetition, Cyclic };

// Code parameters: P nodes, tolerating up to s adversaries with redundancy
// ratio r = 2s+1. Constructible only when 2s+1 <= P (no code can resist more
// than (P-1)/2 adversaries); the repetition scheme additionally needs
// (2s+1) | P.
struct CodeParams {
    std::size_t node_count = 1;
    std::size_t max_adversaries = 0;
    Scheme scheme = Scheme::Repetition;

    CodeParams(std::size_t nodes, std::size_t adversaries, Scheme kind);

    std::size_t redundancy() const { return 2 * max_adversaries + 1; }
    std::size_t group_count() const { return node_count / redundancy(); }
};

// Sparse form of the allocation matrix: per-node sorted sets of gradient-unit
// indices, each of size 2s+1.
struct Assignment {
    std::vector<std::vector<std::size_t>> per_node;

    std::size_t node_count() const { return per_node.size(); }
};

Assignment repetition_assignment(const CodeParams& params);
Assignment cyclic_assignment(const CodeParams& params);

// Average number of gradient units per node.
double redundancy_ratio(const Assignment& a);

// Support of row `node` of the cyclic encoding-weight matrix: the 2s+1
// cyclically consecutive indices starting at `node`. (Column supports, which
// are what nodes compute, run backwards from `node`; cyclic_assignment
// returns those.)
std::vector<std::size_t> cyclic_weight_row_support(const CodeParams& params, std::size_t node);

// d x P block of real gradient-unit columns; column k is the summed gradient
// of data shard k.
struct GradientBlock {
    std::size_t dim = 0;
    std::vector<std::vector<double>> columns;
};

using RealColumns = std::vector<std::vector<double>>;
using ComplexColumns = std::vector<ComplexVector>;

// Precomputed cyclic-code tables: the split IDFT blocks, the encoding-weight
// matrix, and per-node coefficient slices aligned with the assignment.
struct CyclicTables {
    CodeParams params;
    ComplexMatrix idft_top;     // first P-2s rows of the IDFT matrix
    ComplexMatrix idft_bottom;  // last 2s rows
    ComplexMatrix weights;      // P x P; row j supported on the row pattern of j
    Assignment assignment;      // column supports: what each node computes
    std::vector<ComplexVector> node_coeffs;  // weights[k][j] for k in assignment[j], ascending k
};

CyclicTables build_cyclic_tables(const CodeParams& params, const Tolerances& tol = {});

struct DetectionResult {
    std::vector<std::size_t> adversaries;  // sorted, at most s entries
    double locator_residual = 0.0;         // Hankel-solve residual diagnostic
};

// Sum of the node's gradient units, accumulated in ascending-index order.
// Honest nodes in the same repetition group produce bit-identical output.
std::vector<double> encode_repetition(const RealColumns& node_grads);

// Weighted combination of the node's (complex) gradient units with its
// cyclic coefficients, accumulated in ascending assigned-index order.
ComplexVector encode_cyclic(std::size_t node, const ComplexColumns& node_grads,
                            const CyclicTables& tables);

// The detection function: syndrome from the bottom IDFT block, error-locator
// recurrence fitted on the Hankel system, recurrence extension, IDFT, and
// support thresholding. Throws TooManyAdversaries when more than s columns
// light up.
DetectionResult detect_adversaries(const ComplexColumns& received, const CyclicTables& tables,
                                   Rng& rng, const Tolerances& tol = {});

// Per-group streaming majority with byte-exact equality, then the sum of the
// group winners in group order.
std::vector<double> decode_repetition(const RealColumns& received, const CodeParams& params);

// Recovery from the honest columns: solve on the first P-2s trusted columns
// and combine. Exact (up to roundoff) whenever `adversaries` covers every
// corrupted column.
ComplexVector decode_cyclic(const ComplexColumns& received, const CyclicTables& tables,
                            const std::vector<std::size_t>& adversaries);

// Real <-> complex packing: fold a d-vector into ceil(d/2) complex entries
// (zero pad when d is odd) to halve cyclic-code bandwidth.
ComplexVector pack_column(const std::vector<double>& column);
std::vector<double> unpack_column(const ComplexVector& packed, std::size_t dim);
ComplexColumns pack_complex(const GradientBlock& block);

// Promotion without packing (imaginary part zero) and its inverse.
ComplexVector promote_column(const std::vector<double>& column);
std::vector<double> real_part(const ComplexVector& column);

// Canonical reduction used for oracle sums and un-coded baselines: partial
// sums over consecutive blocks of `block` columns, then the sum of the
// partials, all in ascending order. With block = 2s+1 this reproduces the
// repetition decoder's floating-point reduction tree bit for bit.
std::vector<double> blocked_sum(const RealColumns& columns, std::size_t block);

}  // namespace draco

#include "draco/codes.hpp"

#include "draco/majority.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace draco {

CodeParams::CodeParams(std::size_t nodes, std::size_t adversaries, Scheme kind)
    : node_count(nodes), max_adversaries(adversaries), scheme(kind) {
    if (nodes == 0) throw InvalidParams("CodeParams: need at least one node");
    if (2 * adversaries + 1 > nodes) {
        throw InvalidParams("CodeParams: s exceeds (P-1)/2 for P=" + std::to_string(nodes));
    }
    if (kind == Scheme::Repetition && nodes % (2 * adversaries + 1) != 0) {
        throw InvalidParams("CodeParams: repetition scheme needs (2s+1) | P");
    }
}

Assignment repetition_assignment(const CodeParams& params) {
    if (params.scheme != Scheme::Repetition) {
        throw InvalidParams("repetition_assignment: wrong scheme");
    }
    const std::size_t r = params.redundancy();
    Assignment a;
    a.per_node.resize(params.node_count);
    for (std::size_t node = 0; node < params.node_count; ++node) {
        const std::size_t base = (node / r) * r;
        auto& set = a.per_node[node];
        set.resize(r);
        for (std::size_t t = 0; t < r; ++t) set[t] = base + t;
    }
    return a;
}

Assignment cyclic_assignment(const CodeParams& params) {
    if (params.scheme != Scheme::Cyclic) {
        throw InvalidParams("cyclic_assignment: wrong scheme");
    }
    const std::size_t p = params.node_count;
    const std::size_t r = params.redundancy();
    Assignment a;
    a.per_node.resize(p);
    for (std::size_t node = 0; node < p; ++node) {
        auto& set = a.per_node[node];
        set.resize(r);
        for (std::size_t t = 0; t < r; ++t) set[t] = (node + p - t) % p;
        std::sort(set.begin(), set.end());
    }
    return a;
}

double redundancy_ratio(const Assignment& a) {
    std::size_t total = 0;
    for (const auto& set : a.per_node) total += set.size();
    return static_cast<double>(total) / static_cast<double>(a.per_node.size());
}

std::vector<std::size_t> cyclic_weight_row_support(const CodeParams& params, std::size_t node) {
    const std::size_t p = params.node_count;
    std::vector<std::size_t> support(params.redundancy());
    for (std::size_t t = 0; t < support.size(); ++t) support[t] = (node + t) % p;
    std::sort(support.begin(), support.end());
    return support;
}

namespace {

std::vector<std::size_t> sorted_complement(const std::vector<std::size_t>& subset,
                                           std::size_t universe) {
    std::vector<bool> in(universe, false);
    for (std::size_t v : subset) in[v] = true;
    std::vector<std::size_t> out;
    out.reserve(universe - subset.size());
    for (std::size_t v = 0; v < universe; ++v) {
        if (!in[v]) out.push_back(v);
    }
    return out;
}

}  // namespace

CyclicTables build_cyclic_tables(const CodeParams& params, const Tolerances& tol) {
    if (params.scheme != Scheme::Cyclic) {
        throw InvalidParams("build_cyclic_tables: wrong scheme");
    }
    tol.validate();
    const std::size_t p = params.node_count;
    const std::size_t s = params.max_adversaries;
    const std::size_t top_rows = p - 2 * s;

    const ComplexMatrix idft = dft_matrix(p);
    CyclicTables tables{params,
                        idft.top_rows(top_rows),
                        idft.bottom_rows_from(top_rows),
                        ComplexMatrix(p, p),
                        cyclic_assignment(params),
                        {}};

    // Each weight row is a combination of the top IDFT rows, with trailing
    // coefficient fixed to 1, chosen to vanish on the complement of the
    // row's support. The complement columns form a generalized Vandermonde
    // block, so that combination is unique.
    for (std::size_t node = 0; node < p; ++node) {
        const auto row_support = cyclic_weight_row_support(params, node);
        const auto zero_cols = sorted_complement(row_support, p);
        ComplexVector combo(top_rows);
        combo[top_rows - 1] = 1.0;
        if (!zero_cols.empty()) {
            const ComplexMatrix constraint = tables.idft_top.select_cols(zero_cols);
            ComplexMatrix design = constraint.top_rows(top_rows - 1).transpose();
            ComplexVector rhs(zero_cols.size());
            for (std::size_t c = 0; c < zero_cols.size(); ++c) {
                rhs[c] = -constraint.at(top_rows - 1, c);
            }
            ComplexVector q;
            try {
                q = solve_square(design, rhs, tol);
            } catch (const SingularMatrix&) {
                throw SingularConstruction("build_cyclic_tables: weight solve hit a tiny pivot");
            }
            for (std::size_t m = 0; m + 1 < top_rows; ++m) combo[m] = q[m];
        }
        for (std::size_t col = 0; col < p; ++col) {
            Complex acc{};
            for (std::size_t m = 0; m < top_rows; ++m) {
                acc += combo[m] * tables.idft_top.at(m, col);
            }
            tables.weights.at(node, col) = acc;
        }
    }

    tables.node_coeffs.resize(p);
    for (std::size_t node = 0; node < p; ++node) {
        const auto& assigned = tables.assignment.per_node[node];
        auto& coeffs = tables.node_coeffs[node];
        coeffs.resize(assigned.size());
        for (std::size_t t = 0; t < assigned.size(); ++t) {
            coeffs[t] = tables.weights.at(assigned[t], node);
        }
    }
    return tables;
}

std::vector<double> encode_repetition(const RealColumns& node_grads) {
    if (node_grads.empty()) throw AssignmentMismatch("encode_repetition: no gradients");
    std::vector<double> acc = node_grads.front();
    for (std::size_t t = 1; t < node_grads.size(); ++t) {
        const auto& g = node_grads[t];
        if (g.size() != acc.size()) {
            throw DimensionMismatch("encode_repetition: ragged gradient columns");
        }
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
    }
    return acc;
}

ComplexVector encode_cyclic(std::size_t node, const ComplexColumns& node_grads,
                            const CyclicTables& tables) {
    if (node >= tables.params.node_count) throw InvalidParams("encode_cyclic: bad node index");
    const auto& coeffs = tables.node_coeffs[node];
    if (node_grads.size() != coeffs.size()) {
        throw AssignmentMismatch("encode_cyclic: gradient count does not match assignment");
    }
    if (node_grads.empty()) throw AssignmentMismatch("encode_cyclic: no gradients");
    const std::size_t dim = node_grads.front().size();
    ComplexVector acc(dim);
    for (std::size_t t = 0; t < node_grads.size(); ++t) {
        const auto& g = node_grads[t];
        if (g.size() != dim) throw DimensionMismatch("encode_cyclic: ragged gradient columns");
        const Complex c = coeffs[t];
        for (std::size_t i = 0; i < dim; ++i) acc[i] += c * g[i];
    }
    return acc;
}

DetectionResult detect_adversaries(const ComplexColumns& received, const CyclicTables& tables,
                                   Rng& rng, const Tolerances& tol) {
    const std::size_t p = tables.params.node_count;
    const std::size_t s = tables.params.max_adversaries;
    if (received.size() != p) throw DimensionMismatch("detect_adversaries: need P columns");
    if (s == 0) return DetectionResult{};
    const std::size_t dim = received.front().size();

    // Random probe f ~ N(ones, I); a fixed probe could be blind to a noise
    // column orthogonal to it, a random one is not (almost surely).
    std::normal_distribution<double> unit(0.0, 1.0);
    std::vector<double> probe(dim);
    for (auto& x : probe) x = 1.0 + unit(rng);

    ComplexVector probed(p);
    for (std::size_t j = 0; j < p; ++j) {
        if (received[j].size() != dim) {
            throw DimensionMismatch("detect_adversaries: ragged received columns");
        }
        Complex acc{};
        const auto& col = received[j];
        for (std::size_t i = 0; i < dim; ++i) acc += probe[i] * col[i];
        probed[j] = acc;
    }

    // Syndrome s_m = h_{P-2s+m}: the probed row against the adjoint of the
    // bottom IDFT block. Honest encodings are orthogonal to it, so this sees
    // only the noise columns.
    const std::size_t syn_len = 2 * s;
    ComplexVector syndrome(syn_len);
    for (std::size_t m = 0; m < syn_len; ++m) {
        Complex acc{};
        for (std::size_t j = 0; j < p; ++j) {
            acc += probed[j] * std::conj(tables.idft_bottom.at(m, j));
        }
        syndrome[m] = acc;
    }

    // An adversary-free round leaves only roundoff here (the honest part is
    // exactly orthogonal); fitting a locator to that noise and extending the
    // recurrence amplifies it into spurious support. Gate before solving.
    constexpr double kSyndromeNoiseFloor = 1e-10;
    if (max_abs(syndrome) <= kSyndromeNoiseFloor * std::max(1.0, max_abs(probed))) {
        return DetectionResult{};
    }

    // Error-locator coefficients from the s x s Hankel system; rank-deficient
    // when fewer than s columns are corrupted, hence the min-norm solve.
    ComplexMatrix hankel(s, s);
    ComplexVector rhs(s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t u = 0; u < s; ++u) hankel.at(i, u) = syndrome[s - 1 - i + u];
        rhs[i] = syndrome[syn_len - 1 - i];
    }
    const ComplexVector locator = min_norm_solve(hankel, rhs, tol);

    const ComplexVector fitted = matvec(hankel, locator);
    double residual = 0.0;
    for (std::size_t i = 0; i < s; ++i) residual = std::max(residual, std::abs(fitted[i] - rhs[i]));
    residual /= std::max(1.0, max_abs(syndrome));

    // Extend the recurrence h_l = sum_u beta_u h_{l+u-s} over the remaining
    // cyclic positions, then transform back; nonzero support marks the
    // adversarial columns.
    ComplexVector spectrum(p);
    for (std::size_t m = 0; m < syn_len; ++m) spectrum[p - syn_len + m] = syndrome[m];
    for (std::size_t l = 0; l + syn_len < p; ++l) {
        Complex acc{};
        for (std::size_t u = 0; u < s; ++u) {
            acc += locator[u] * spectrum[(l + u + p - s) % p];
        }
        spectrum[l] = acc;
    }

    ComplexVector indicator(p);
    const std::size_t top = p - syn_len;
    for (std::size_t j = 0; j < p; ++j) {
        Complex acc{};
        const ComplexMatrix& block = j < top ? tables.idft_top : tables.idft_bottom;
        const std::size_t row = j < top ? j : j - top;
        for (std::size_t l = 0; l < p; ++l) acc += block.at(row, l) * spectrum[l];
        indicator[j] = acc;
    }

    const double threshold = tol.zero_tol * std::max(1.0, max_abs(indicator));
    DetectionResult result;
    result.locator_residual = residual;
    for (std::size_t j = 0; j < p; ++j) {
        if (std::abs(indicator[j]) > threshold) result.adversaries.push_back(j);
    }
    if (result.adversaries.size() > s) {
        throw TooManyAdversaries("detect_adversaries: " +
                                 std::to_string(result.adversaries.size()) +
                                 " suspicious columns exceed s=" + std::to_string(s));
    }
    return result;
}

std::vector<double> decode_repetition(const RealColumns& received, const CodeParams& params) {
    if (params.scheme != Scheme::Repetition) {
        throw InvalidParams("decode_repetition: wrong scheme");
    }
    if (received.size() != params.node_count) {
        throw DimensionMismatch("decode_repetition: need P columns");
    }
    const std::size_t r = params.redundancy();
    const auto bytes_equal = [](const std::vector<double>& a, const std::vector<double>& b) {
        return a.size() == b.size() &&
               std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
    };

    std::vector<double> total;
    for (std::size_t group = 0; group < params.group_count(); ++group) {
        const auto first = received.begin() + static_cast<std::ptrdiff_t>(group * r);
        const auto winner = streaming_majority(first, first + static_cast<std::ptrdiff_t>(r),
                                               bytes_equal);
        if (total.empty()) {
            total = *winner;
        } else {
            if (winner->size() != total.size()) {
                throw DimensionMismatch("decode_repetition: ragged columns");
            }
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += (*winner)[i];
        }
    }
    return total;
}

ComplexVector decode_cyclic(const ComplexColumns& received, const CyclicTables& tables,
                            const std::vector<std::size_t>& adversaries) {
    const std::size_t p = tables.params.node_count;
    const std::size_t s = tables.params.max_adversaries;
    if (received.size() != p) throw DimensionMismatch("decode_cyclic: need P columns");
    if (adversaries.size() > s) {
        throw InvalidParams("decode_cyclic: adversary set larger than s");
    }

    const auto trusted = sorted_complement(adversaries, p);
    const std::size_t use = p - 2 * s;
    const std::vector<std::size_t> anchor(trusted.begin(),
                                          trusted.begin() + static_cast<std::ptrdiff_t>(use));

    // On any P-2s trusted columns the top IDFT block is invertible
    // (Vandermonde with distinct unit-circle nodes), and steering it to the
    // last unit vector makes the weight combination equal the all-ones
    // vector, which sums the gradient units.
    ComplexVector rhs(use);
    rhs[use - 1] = 1.0;
    ComplexVector combiner;
    try {
        combiner = solve_square(tables.idft_top.select_cols(anchor), rhs);
    } catch (const SingularMatrix&) {
        throw SingularSubsystem("decode_cyclic: trusted-column system was singular");
    }

    const std::size_t dim = received.front().size();
    ComplexVector out(dim);
    for (std::size_t t = 0; t < anchor.size(); ++t) {
        const auto& col = received[anchor[t]];
        if (col.size() != dim) throw DimensionMismatch("decode_cyclic: ragged columns");
        const Complex c = combiner[t];
        for (std::size_t i = 0; i < dim; ++i) out[i] += c * col[i];
    }
    return out;
}

ComplexVector pack_column(const std::vector<double>& column) {
    const std::size_t dim = column.size();
    const std::size_t half = (dim + 1) / 2;
    ComplexVector packed(half);
    for (std::size_t i = 0; i < half; ++i) {
        const double re = column[i];
        const double im = half + i < dim ? column[half + i] : 0.0;
        packed[i] = Complex{re, im};
    }
    return packed;
}

std::vector<double> unpack_column(const ComplexVector& packed, std::size_t dim) {
    const std::size_t half = (dim + 1) / 2;
    if (packed.size() != half) throw DimensionMismatch("unpack_column: wrong packed length");
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < half; ++i) {
        out[i] = packed[i].real();
        if (half + i < dim) out[half + i] = packed[i].imag();
    }
    return out;
}

ComplexColumns pack_complex(const GradientBlock& block) {
    ComplexColumns out;
    out.reserve(block.columns.size());
    for (const auto& col : block.columns) {
        if (col.size() != block.dim) throw DimensionMismatch("pack_complex: ragged columns");
        out.push_back(pack_column(col));
    }
    return out;
}

ComplexVector promote_column(const std::vector<double>& column) {
    ComplexVector out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) out[i] = Complex{column[i], 0.0};
    return out;
}

std::vector<double> real_part(const ComplexVector& column) {
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) out[i] = column[i].real();
    return out;
}

std::vector<double> blocked_sum(const RealColumns& columns, std::size_t block) {
    if (columns.empty()) throw EmptySequence("blocked_sum: no columns");
    if (block == 0 || columns.size() % block != 0) {
        throw InvalidParams("blocked_sum: block must divide the column count");
    }
    std::vector<double> total;
    for (std::size_t group = 0; group < columns.size() / block; ++group) {
        std::vector<double> partial = columns[group * block];
        for (std::size_t t = 1; t < block; ++t) {
            const auto& col = columns[group * block + t];
            if (col.size() != partial.size()) {
                throw DimensionMismatch("blocked_sum: ragged columns");
            }
            for (std::size_t i = 0; i < partial.size(); ++i) partial[i] += col[i];
        }
        if (total.empty()) {
            total = std::move(partial);
        } else {
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += partial[i];
        }
    }
    return total;
}

}  // namespace draco

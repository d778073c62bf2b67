#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "draco/errors.hpp"

namespace draco {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix. Small (P x P at most a few hundred); no
// sparse storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    bool all_finite() const;
    double max_abs() const;

    // Columns selected by `cols` in the given order.
    ComplexMatrix select_cols(const std::vector<std::size_t>& cols) const;
    // First `count` rows.
    ComplexMatrix top_rows(std::size_t count) const;
    // Rows [first, rows).
    ComplexMatrix bottom_rows_from(std::size_t first) const;

    ComplexMatrix transpose() const;
    ComplexMatrix adjoint() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);

double norm2(const ComplexVector& v);
double max_abs(const ComplexVector& v);

struct Tolerances {
    // Relative singular-value / pivot cutoff for rank decisions.
    double solve_tol = 1e-8;
    // Relative magnitude threshold for "nonzero entry" tests in detection.
    double zero_tol = 1e-6;
    // Relative error bound for decoded sums.
    double recover_tol = 1e-8;

    void validate() const;
};

// P x P unitary IDFT matrix with entries exp(2*pi*i*j*k/P)/sqrt(P)
// (0-indexed j, k).
ComplexMatrix dft_matrix(std::size_t p);

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
// pivot falls below tol.solve_tol * max|M|.
ComplexVector solve_square(const ComplexMatrix& m, const ComplexVector& rhs,
                           const Tolerances& tol = {});

// Minimum-norm least-squares solution via SVD; singular values at or below
// tol.solve_tol * sigma_max are treated as zero. Always returns.
ComplexVector min_norm_solve(const ComplexMatrix& m, const ComplexVector& rhs,
                             const Tolerances& tol = {});

// Singular values of m, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace draco

#include "draco/numerics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace draco {

bool ComplexMatrix::all_finite() const {
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix ComplexMatrix::select_cols(const std::vector<std::size_t>& cols) const {
    ComplexMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t i = 0; i < cols.size(); ++i) out.at(r, i) = at(r, cols[i]);
    }
    return out;
}

ComplexMatrix ComplexMatrix::top_rows(std::size_t count) const {
    ComplexMatrix out(count, cols_);
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    }
    return out;
}

ComplexMatrix ComplexMatrix::bottom_rows_from(std::size_t first) const {
    ComplexMatrix out(rows_ - first, cols_);
    for (std::size_t r = first; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r - first, c) = at(r, c);
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
    }
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex arc = a.at(r, k);
            if (arc == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out.at(r, c) += arc * b.at(k, c);
            }
        }
    }
    return out;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.size()) throw DimensionMismatch("matvec: dimensions differ");
    ComplexVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

double norm2(const ComplexVector& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

double max_abs(const ComplexVector& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void Tolerances::validate() const {
    const bool ok = solve_tol > 0 && solve_tol < 1 && zero_tol > 0 && zero_tol < 1 &&
                    recover_tol > 0 && recover_tol < 1;
    if (!ok) throw InvalidParams("Tolerances must be strictly positive and < 1");
}

ComplexMatrix dft_matrix(std::size_t p) {
    if (p == 0) throw InvalidParams("dft_matrix: P must be >= 1");
    ComplexMatrix c(p, p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            // Reduce j*k mod P before taking the angle; keeps the entries of
            // large matrices on the exact same unit-circle samples.
            const std::size_t e = (j * k) % p;
            const double theta = step * static_cast<double>(e);
            c.at(j, k) = Complex{scale * std::cos(theta), scale * std::sin(theta)};
        }
    }
    return c;
}

ComplexVector solve_square(const ComplexMatrix& m, const ComplexVector& rhs,
                           const Tolerances& tol) {
    if (m.rows() != m.cols()) throw DimensionMismatch("solve_square: matrix not square");
    if (m.rows() != rhs.size()) throw DimensionMismatch("solve_square: rhs size mismatch");
    const std::size_t n = m.rows();
    if (n == 0) return {};

    ComplexMatrix a = m;
    ComplexVector b = rhs;
    const double pivot_floor = tol.solve_tol * std::max(m.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(a.at(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best < pivot_floor) throw SingularMatrix("solve_square: pivot below tolerance");
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const Complex inv = 1.0 / a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a.at(r, col) * inv;
            if (f == Complex{}) continue;
            a.at(r, col) = Complex{};
            for (std::size_t c = col + 1; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            b[r] -= f * b[col];
        }
    }
    ComplexVector x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        Complex acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a.at(ri, c) * x[c];
        x[ri] = acc / a.at(ri, ri);
    }
    return x;
}

namespace {

using EigenCMat =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenCMat to_eigen(const ComplexMatrix& m) {
    return Eigen::Map<const EigenCMat>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                       static_cast<Eigen::Index>(m.cols()));
}

}  // namespace

ComplexVector min_norm_solve(const ComplexMatrix& m, const ComplexVector& rhs,
                             const Tolerances& tol) {
    if (m.rows() != rhs.size()) throw DimensionMismatch("min_norm_solve: rhs size mismatch");
    if (m.cols() == 0) return {};
    if (m.rows() == 0) return ComplexVector(m.cols());

    EigenCMat a = to_eigen(m);
    Eigen::VectorXcd b(static_cast<Eigen::Index>(rhs.size()));
    for (std::size_t i = 0; i < rhs.size(); ++i) b[static_cast<Eigen::Index>(i)] = rhs[i];

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol.solve_tol);
    if (svd.singularValues().size() == 0 || svd.singularValues()(0) == 0.0) {
        return ComplexVector(m.cols());
    }
    Eigen::VectorXcd x = svd.solve(b);
    ComplexVector out(m.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[static_cast<Eigen::Index>(i)];
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    std::vector<double> out(static_cast<std::size_t>(svd.singularValues().size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
    }
    return out;
}

}  // namespace draco

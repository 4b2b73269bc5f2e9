#pragma once

#include "oversamp/laurent_poly.hpp"
#include "oversamp/matrix.hpp"

#include <Eigen/Dense>

#include <vector>

namespace oversamp {

/// Dense row-major matrix of Laurent polynomials sharing one domain.
template <class T>
class PolyMatrix {
 public:
  using Poly = LaurentPoly<T>;

  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  /// Embeds a constant matrix.
  static PolyMatrix constant(const Matrix<T>& m) {
    PolyMatrix p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = Poly::constant(m(i, j));
    return p;
  }

  /// The affine matrix a + b x as polynomials in x.
  static PolyMatrix affine(const Matrix<T>& a, const Matrix<T>& b) {
    PolyMatrix p(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        p(i, j).add_term(0, a(i, j));
        p(i, j).add_term(1, b(i, j));
      }
    return p;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& p : entries_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "poly matrix product shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }

  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    PolyMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  Eigen::MatrixXcd eval(Complex z) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(z);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> entries_;
};

using ExactPolyMatrix = PolyMatrix<Rational>;

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// Binomial coefficient, saturating at the max of std::size_t.
std::size_t binomial(std::size_t n, std::size_t k);

/// Determinant of a square exact polynomial matrix: cofactor expansion up
/// to order 3, fraction-free Bareiss elimination above.
ExactPoly determinant(const ExactPolyMatrix& m);

/// Every k x k minor, ordered by (row subset, column subset), both subsets
/// enumerated lexicographically with the row subset varying slowest.
std::vector<ExactPoly> minors(const ExactPolyMatrix& m, std::size_t k);

/// Largest k with a nonzero k x k minor.
std::size_t normal_rank(const ExactPolyMatrix& m);

/// Invariant polynomials i_j = d_j / d_{j-1}, d_j the gcd of the order-j
/// minors. Empty for the zero matrix.
std::vector<ExactPoly> invariant_polynomials(const ExactPolyMatrix& m);

}  // namespace oversamp

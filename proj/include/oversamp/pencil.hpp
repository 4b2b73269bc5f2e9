#pragma once

#include "oversamp/laurent_poly.hpp"
#include "oversamp/matrix.hpp"
#include "oversamp/poly_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oversamp {

/// The matrix pencil A - lambda B.
template <class T>
struct Pencil {
  Matrix<T> A;
  Matrix<T> B;

  Pencil() = default;
  Pencil(Matrix<T> a, Matrix<T> b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) {
      throw Error(ErrorKind::InvalidArgument, "pencil matrices must share a shape");
    }
  }

  std::size_t rows() const noexcept { return A.rows(); }
  std::size_t cols() const noexcept { return A.cols(); }

  template <class U>
  Pencil<U> cast() const {
    return Pencil<U>(A.template cast<U>(), B.template cast<U>());
  }

  friend bool operator==(const Pencil& x, const Pencil& y) { return x.A == y.A && x.B == y.B; }
};

using ExactPencil = Pencil<Rational>;
using FloatPencil = Pencil<double>;

/// A - lambda B as a polynomial matrix in lambda.
ExactPolyMatrix as_poly_matrix(const ExactPencil& p);

struct EigenvalueBlocks {
  Complex value;
  std::vector<int> block_sizes;  ///< sorted ascending
};

/// Kronecker structure of an m x n pencil. Every multiset is kept sorted
/// ascending so structures compare with ==.
struct KroneckerStructure {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> right_minimal_indices;  ///< epsilon_i, blocks L_eps
  std::vector<int> left_minimal_indices;   ///< eta_i, blocks L_eta^T
  std::vector<int> zero_jordan_blocks;
  std::vector<int> infinite_blocks;
  std::vector<EigenvalueBlocks> finite_nonzero;

  /// Throws InvalidArgument unless the block sizes account for every row
  /// and column exactly.
  void check_sizes() const;

  std::size_t normal_rank() const { return cols - right_minimal_indices.size(); }
  bool has_right_singular_part() const { return !right_minimal_indices.empty(); }
  bool has_finite_nonzero_eigenvalues() const { return !finite_nonzero.empty(); }
  /// Total algebraic multiplicity of the finite eigenvalues (zero included).
  int finite_multiplicity() const;

  /// Same block multisets; eigenvalues compared within tol.
  bool same_structure(const KroneckerStructure& o, double tol = 1e-6) const;
};

struct StaircaseOptions {
  /// Relative singular-value threshold for every rank decision.
  double tol = 1e-10;
  /// A singular value within this factor of the threshold is ambiguous.
  double ambiguity_factor = 10.0;
  /// Relative distance under which computed eigenvalues are one cluster.
  double cluster_tol = 1e-4;
};

/// Kronecker structure by staircase reduction with unitary transformations:
/// right singular and zero structure from (A, B), infinite structure from the
/// dual pencil (B, A), left singular structure from the transpose, and the
/// remaining regular core through QZ. Throws RankAmbiguousError when a rank
/// decision lands too close to the threshold.
KroneckerStructure staircase(const FloatPencil& p, const StaircaseOptions& opts = {});
KroneckerStructure staircase(const ExactPencil& p, const StaircaseOptions& opts = {});

/// Float normal rank: maximum numeric rank of A - lambda0 B over several
/// random complex lambda0 drawn from rng.
std::size_t normal_rank(const FloatPencil& p, std::mt19937_64& rng, double tol = 1e-10, int probes = 6);
/// Exact normal rank: order of the largest nonvanishing minor in lambda.
std::size_t normal_rank(const ExactPencil& p);

struct SpectrumOracle {
  std::size_t normal_rank = 0;
  ExactPoly minor_gcd;  ///< monic gcd of the maximal nonvanishing minors, in lambda

  /// Finite eigenvalues present at all (gcd not constant).
  bool has_finite_eigenvalues() const { return minor_gcd.degree() > 0; }
  /// gcd == c lambda^k: zero is the only possible finite eigenvalue.
  bool only_zero_eigenvalue() const { return minor_gcd.is_monomial(); }
  int zero_multiplicity() const { return minor_gcd.valuation(); }
};

SpectrumOracle spectrum_oracle(const ExactPencil& p);

/// Numeric roots of an exact polynomial (companion matrix eigenvalues).
std::vector<Complex> polynomial_roots(const ExactPoly& p);

/// Compares the staircase result with the exact oracle on normal rank,
/// presence of a right singular part and the finite spectrum (with
/// multiplicities).
bool oracle_agrees(const KroneckerStructure& k, const SpectrumOracle& o, double root_tol = 1e-5);

}  // namespace oversamp

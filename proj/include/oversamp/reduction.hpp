#pragma once

#include "oversamp/generators.hpp"
#include "oversamp/pencil.hpp"
#include "oversamp/poly_matrix.hpp"

#include <optional>
#include <vector>

namespace oversamp {

/// g~_j = z^{r-1} g_j. Every result is an algebraic polynomial of degree at
/// most N + r - 2 < 2r; a violation throws DegreeBound.
std::vector<ExactPoly> to_algebraic(const GMatrix& g);

/// s x r matrix whose column q holds the order-q r-harmonics of the g~_j.
/// Each entry must be a single monomial c z^{kr+q}, k in {0, 1}.
ExactPolyMatrix harmonic_matrix(const std::vector<ExactPoly>& g_tilde, int r);

/// G~(lambda) = C0 + lambda C1 with lambda = z^r, split into the leading
/// N-1 columns M(lambda) and the trailing constant block.
struct SplitForm {
  int r = 0;
  int N = 0;
  RationalMatrix constant;  ///< C0, s x r
  RationalMatrix lambda;    ///< C1, s x r
  /// Column q of the harmonic matrix was divided by z^{column_shift[q]}
  /// (q or q + r).
  std::vector<int> column_shift;

  std::size_t s() const { return constant.rows(); }
  RationalMatrix m_constant() const { return constant.block(0, 0, constant.rows(), static_cast<std::size_t>(N - 1)); }
  RationalMatrix m_lambda() const { return lambda.block(0, 0, lambda.rows(), static_cast<std::size_t>(N - 1)); }
  /// The scalar block, s x (r - N + 1).
  RationalMatrix scalar() const {
    return constant.block(0, static_cast<std::size_t>(N - 1), constant.rows(), static_cast<std::size_t>(r - N + 1));
  }
  /// G~ as a polynomial matrix in lambda.
  ExactPolyMatrix tilde_g() const { return ExactPolyMatrix::affine(constant, lambda); }
};

/// Divides column q by z^q (and the trailing columns by z^r when they are
/// uniformly of the form c z^r), then reads off constant and lambda parts.
SplitForm normalize_and_split(const ExactPolyMatrix& hat_g, int N);

struct RowCompression {
  RationalMatrix R;             ///< s x s, invertible
  RationalMatrix scalar_prime;  ///< invertible (r-N+1) x (r-N+1) top of R * scalar
  ExactPencil M1;               ///< top r-N+1 rows of R M, as M11 - lambda M12
  ExactPencil M2;               ///< bottom s-r+N-1 rows of R M, as M21 - lambda M22
};

/// Builds R by exact elimination on the scalar block (per column, pivot is
/// the first nonzero scanning bottom-up among the unreduced rows). A caller
/// supplied R is validated and used instead. Throws RankDeficientScalarPart
/// when rank(scalar) < r - N + 1.
RowCompression row_compress(const SplitForm& split, const std::optional<RationalMatrix>& r_override = std::nullopt);

/// The s x r pencil A^T - lambda B^T with G~(lambda) = A^T - lambda B^T.
/// Stored as Pencil{A^T, B^T}.
ExactPencil full_pencil(const SplitForm& split);
/// Same from a polynomial matrix in lambda; entries must be affine.
ExactPencil full_pencil(const ExactPolyMatrix& tilde_g);

/// The whole chain for one problem.
struct ReductionTrace {
  GMatrix g;
  std::vector<ExactPoly> g_tilde;
  ExactPolyMatrix hat_g;
  SplitForm split;
  std::size_t scalar_rank = 0;
  std::optional<RowCompression> compression;  ///< absent when the scalar block is rank deficient
  ExactPencil full;

  bool scalar_rank_ok() const { return compression.has_value(); }
};

ReductionTrace reduce(const SamplingProblem& p, const std::optional<RationalMatrix>& r_override = std::nullopt);

/// Fourier matrix Omega_r with entries W^{jk}, W = exp(-2 pi i / r).
Eigen::MatrixXcd fourier_matrix(int r);

}  // namespace oversamp

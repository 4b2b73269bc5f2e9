#pragma once

#include "oversamp/pencil.hpp"
#include "oversamp/poly_matrix.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace oversamp {

/// L(lambda) = lambda^valuation sum_k l^k lambda^k with s x r coefficient
/// matrices, so that L^T(lambda) G~(lambda) = I_r. Column i of l^k is the
/// vector l_i^k. valuation < 0 only when the pencil has a zero eigenvalue.
struct LeftInverse {
  int nu = 0;
  int valuation = 0;
  std::vector<Eigen::MatrixXd> coefficients;               ///< nu + 1 matrices, s x r
  std::optional<std::vector<RationalMatrix>> exact;        ///< set by the exact solvers
  double residual_norm = 0.0;

  std::size_t s() const { return coefficients.empty() ? 0 : static_cast<std::size_t>(coefficients[0].rows()); }
  std::size_t r() const { return coefficients.empty() ? 0 : static_cast<std::size_t>(coefficients[0].cols()); }
  /// L(lambda0) as an s x r matrix.
  Eigen::MatrixXcd eval(Complex lambda) const;
};

/// Block system for degree nu, size (nu+2) r x (nu+1) s, unknowns stacked as
/// (l^nu, ..., l^0):
///   [-B            ]
///   [ A  -B        ]
///   [     ...  -B  ]
///   [           A  ]
/// with A = (A^T)^T and B = (B^T)^T taken from the pencil A^T - lambda B^T.
RationalMatrix block_system(const ExactPencil& p, int nu);
/// Right-hand side: zero except the r x r block of the lambda^kappa
/// equations, which is I_r. kappa = 0 is the last block.
RationalMatrix block_rhs(std::size_t r, int nu, int kappa = 0);

/// Unique inverse of degree N - 2 for s = r + 1. Checks rank A^T = r,
/// rank B^T = N - 1 and rank [-B 0; A -B] = r + N - 1 (PreconditionFailed),
/// then solves the block system exactly (NoPolynomialInverse if inconsistent).
LeftInverse solve_min_oversampling(const ExactPencil& p, int N, int r);

/// Smallest nu <= nu_max (then smallest kappa <= nu + 1) for which
/// L_poly^T G~ = lambda^kappa I is consistent; returns L = lambda^-kappa L_poly.
/// Exact solve.
LeftInverse solve_general(const ExactPencil& p, int nu_max);
/// Float variant: complete orthogonal decomposition with the consistency
/// test ||S x - b|| <= tol (||S|| ||x|| + ||b||).
LeftInverse solve_general(const FloatPencil& p, int nu_max, double tol = 1e-10);

/// Max over lambdas of ||L^T(lambda) G~(lambda) - I||_F.
double residual_at(const LeftInverse& l, const FloatPencil& p, const std::vector<Complex>& lambdas);
/// Largest coefficient of L^T G~ - I in Frobenius norm, from the float coefficients.
double coefficient_residual(const LeftInverse& l, const FloatPencil& p);

/// Left inverse of G(z) in the z domain.
struct BackMapped {
  PolyMatrix<Complex> LG;        ///< r x s Laurent matrix, LG(z) G(z) = I_r
  std::vector<RealPoly> a_row;   ///< first row of LG, real coefficients
};

/// LG(z) = D(z)^{-1} Omega_r^{-1} Q(z) L^T(z^r) with D = diag((W^k z)^{1-r})
/// and Q = diag(z^{-column_shift[q]}). column_shift defaults to 0, 1, ..., r-1.
/// Throws NonRealFilters when the first row has |Im| above imag_tol.
BackMapped backmap_to_G(const LeftInverse& l, int r, int s, const std::vector<int>& column_shift = {},
                        double imag_tol = 1e-9);

/// Coefficients of P(lambda) = I_s - G~(lambda) L^T(lambda); entry k
/// multiplies lambda^(k + valuation). Every A(lambda) = L^T + X(lambda) P(lambda) is again a left inverse.
std::vector<Eigen::MatrixXd> inverse_family_projector(const FloatPencil& p, const LeftInverse& l);

}  // namespace oversamp

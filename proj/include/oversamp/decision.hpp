#pragma once

#include "oversamp/generators.hpp"
#include "oversamp/pencil.hpp"
#include "oversamp/reduction.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace oversamp {

struct FrameScan {
  double alpha_hat = 0.0;  ///< min over the grid of lambda_min(G* G)
  double beta_hat = 0.0;   ///< max over the grid of lambda_max(G* G)
  int min_rank = 0;        ///< min over the grid of the numeric rank of G(w)
  int grid_size = 0;
};

struct ExistenceReport {
  bool scalar_rank_ok = false;
  bool no_right_singular = false;
  bool only_zero_finite_eigenvalue = false;
  bool exists = false;
  /// Structure of M2; absent when the scalar block is rank deficient.
  std::optional<KroneckerStructure> kronecker;
  /// Pencil route and minor route agree. Absent when the minor oracle was
  /// skipped for size.
  std::optional<bool> oracle_agrees;
  std::optional<bool> minor_oracle;
  /// Only evaluated for s = r + 1.
  std::optional<bool> sufficient_pattern_holds;
  std::optional<FrameScan> frame_scan;
  std::vector<std::string> warnings;
};

struct DecisionOptions {
  StaircaseOptions staircase;
  /// Skip the minor oracle when C(s, r) exceeds this.
  std::size_t minor_guard = 10000;
  /// Grid size for the frame scan; 0 disables it.
  int grid_size = 0;
};

ExistenceReport existence_check(const SamplingProblem& p, const DecisionOptions& opts = {});
ExistenceReport existence_check(const ReductionTrace& trace, const DecisionOptions& opts = {});

/// True iff the gcd of all r x r minors of the s x r Laurent matrix is a
/// monomial c z^k. Throws OracleTooLarge above `guard` minors.
bool monomial_minor_oracle(const ExactPolyMatrix& g, std::size_t guard = 10000);
/// The same test applied to the problem's harmonic matrix, whose maximal
/// minors differ from those of G(z) by a unit monomial factor.
bool monomial_minor_oracle(const SamplingProblem& p, std::size_t guard = 10000);

/// Extreme eigenvalues of G*(w) G(w) over w_k = (k + 1/2) / (r grid), k < grid.
FrameScan frame_scan(const SamplingProblem& p, int grid_size = 256, double rank_tol = 1e-10);
/// Core scan over any matrix valued function on (0, 1/r).
FrameScan frame_scan(const std::function<Eigen::MatrixXcd(double)>& g_of_w, int r, int grid_size,
                     double rank_tol = 1e-10);

/// Nonzero anti-diagonal pattern sufficient for a unique left inverse of
/// degree N - 2 (1-based indices on the s x r pencil A^T - lambda B^T):
/// A^T_ij != 0 for i + j in {r + 2, r + N + 1}; B^T_ij != 0 for i + j = N + 1,
/// i >= 2. Throws WrongShape unless s = r + 1.
bool sufficient_pattern_check(const ExactPencil& p, int N, int r);

}  // namespace oversamp

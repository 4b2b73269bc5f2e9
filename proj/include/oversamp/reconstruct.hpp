#pragma once

#include "oversamp/decision.hpp"
#include "oversamp/generators.hpp"
#include "oversamp/leftinv.hpp"
#include "oversamp/reduction.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oversamp {

/// S_j(t) = r sum_n c_{j,n} phi(t - n) for channels j = 1..s.
struct ReconstructionFilters {
  int r = 0;
  int s = 0;
  GeneratorSpec generator;
  std::vector<std::map<int, double>> per_channel;  ///< index j-1 -> (n -> c_{j,n})

  /// Interval containing supp S_j; empty channels give {0, 0}.
  std::pair<double, double> support(int j) const;
  double eval(int j, double t) const;
};

ReconstructionFilters filters_from_row(const std::vector<RealPoly>& a_row, const SamplingProblem& p);

/// Samples (Lf)(m r / s) indexed by the flat index m = s n + j - 1.
using SampleSequence = std::map<long, Rational>;

/// Exact samples of f = sum_k a_k phi(. - k) for every m in [m_lo, m_hi].
/// Without a window, covers every m whose sample point lies in supp Lf.
SampleSequence sample_function(const std::map<int, Rational>& coeffs, const SamplingProblem& p,
                               std::optional<std::pair<long, long>> window = std::nullopt);

/// Flat sample indices whose term can be nonzero at t.
std::vector<long> required_samples(const ReconstructionFilters& f, double t);

/// f(t) = sum_n sum_j (Lf)(r n + (j-1) r / s) S_j(t - r n). Throws
/// CoverageGapError listing the absent indices.
std::vector<double> reconstruct_eval(const SampleSequence& samples, const ReconstructionFilters& f,
                                     const std::vector<double>& t_grid);

struct DesignOptions {
  DecisionOptions decision;
  /// Degree cap for the general solver; 0 selects r N.
  int nu_max = 0;
};

/// Existence check, left inverse, back-map and filters in one pass.
struct FilterDesign {
  ReductionTrace trace;
  ExistenceReport report;
  std::optional<LeftInverse> inverse;
  std::optional<BackMapped> backmapped;
  std::optional<ReconstructionFilters> filters;
};

/// Runs the pipeline; stops after the report when exists = false. The
/// exact minimal-oversampling solver is used for s = r + 1, the exact
/// general solver otherwise.
FilterDesign design_filters(const SamplingProblem& p, const DesignOptions& opts = {});

struct VerifyReport {
  double max_error = 0.0;
  std::vector<double> per_trial;
};

/// Random f in V_phi (coefficients a_{-3..3} uniform in [-1, 1] with
/// denominator 1000), reconstructed on 200 points inside supp f. Throws
/// PreconditionFailed when no compactly supported filters exist.
VerifyReport verify_reconstruction(const SamplingProblem& p, int trials, std::uint64_t seed,
                                   const DesignOptions& opts = {});
VerifyReport verify_reconstruction(const SamplingProblem& p, const ReconstructionFilters& filters, int trials,
                                   std::uint64_t seed);

}  // namespace oversamp

#pragma once

#include "oversamp/laurent_poly.hpp"
#include "oversamp/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <variant>
#include <vector>

namespace oversamp {

/// Cardinal B-spline N_m of order m (degree m-1) supported on [0, m].
struct BSpline {
  int order = 3;
};

/// Piecewise polynomial generator. Piece i lives on [breakpoints[i],
/// breakpoints[i+1]) and holds ascending coefficients in the global
/// variable t, i.e. c0 + c1 t + c2 t^2 + ...
struct PiecewisePoly {
  std::vector<Rational> breakpoints;
  std::vector<std::vector<Rational>> pieces;
};

struct GeneratorSpec {
  std::variant<BSpline, PiecewisePoly> kind;

  /// Right end of the support [0, support_length].
  Rational support_length() const;
};

struct Identity {};

/// (L f)(t) = f(t + d).
struct Shift {
  Rational d;
};

struct Tap {
  Rational delay;
  Rational weight;
};

/// (L f)(t) = sum_k w_k f(t - delay_k).
struct FirCombination {
  std::vector<Tap> taps;
};

struct SystemSpec {
  std::variant<Identity, Shift, FirCombination> kind;
};

/// Support interval [lo, hi] of a compactly supported function.
struct Support {
  Rational lo;
  Rational hi;
};

struct SamplingProblem {
  GeneratorSpec generator;
  SystemSpec system;
  int r = 0;
  int s = 0;
  int N = 0;  ///< smallest integer with supp(L phi) inside [0, N]

  /// Sampling period r/s.
  Rational period() const { return Rational(r, s); }
};

/// Checks that the generator is well formed and continuous on the real line.
void validate_generator(const GeneratorSpec& g);

Support lphi_support(const GeneratorSpec& g, const SystemSpec& sys);

/// Smallest N with supp(L phi) inside [0, N]; throws InvalidProblem when the
/// support starts left of the origin.
int support_bound(const GeneratorSpec& g, const SystemSpec& sys);

/// Validated problem with N recomputed from the supports. Requires
/// 1 < N <= r < s.
SamplingProblem make_problem(GeneratorSpec g, SystemSpec sys, int r, int s);

/// Re-checks every invariant of an already assembled problem, including
/// that the stored N matches the supports.
void validate_problem(const SamplingProblem& p);

/// Exact value of the generator at t (zero outside the support).
Rational generator_eval(const GeneratorSpec& g, const Rational& t);

/// Floating-point value at t. B-splines use de Boor's triangular scheme, a
/// different route from the exact recurrence.
double generator_eval_double(const GeneratorSpec& g, double t);

/// (L phi)(t), exact.
Rational lphi_eval(const GeneratorSpec& g, const SystemSpec& sys, const Rational& t);

/// Nonzero samples (L phi)(n + (j-1) r/s), row j-1 mapping n to the value.
struct SampleTable {
  int r = 0;
  int s = 0;
  std::vector<std::map<int, Rational>> rows;

  Rational at(int j, int n) const;  ///< j is 1-based
};

SampleTable lphi_samples(const SamplingProblem& p);

/// The s Laurent polynomials g_j(z) = sum_n (L phi)(n + (j-1) r/s) z^n that
/// generate the s x r matrix G(z) = [g_j(W^k z)], W = exp(-2 pi i / r).
struct GMatrix {
  int r = 0;
  int s = 0;
  std::vector<ExactPoly> g;

  /// Numeric G(z0).
  Eigen::MatrixXcd eval(Complex z0) const;
  /// Numeric G(w) = G(exp(-2 pi i w)).
  Eigen::MatrixXcd eval_frequency(double w) const;
};

GMatrix build_G(const SamplingProblem& p);

}  // namespace oversamp

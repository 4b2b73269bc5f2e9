#include "oversamp/generators.hpp"

#include "oversamp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oversamp {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

Rational bspline_exact(int order, const Rational& t) {
  if (sgn(t) < 0 || t >= order) return 0;
  if (order == 1) return 1;
  const Rational m1(order - 1);
  return (t * bspline_exact(order - 1, t) + (Rational(order) - t) * bspline_exact(order - 1, t - 1)) / m1;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& t) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double horner(const std::vector<Rational>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

// de Boor on the uniform knot vector 0, 1, ..., order with unit control
// coefficient on the basis function starting at 0.
double bspline_de_boor(int order, double t) {
  if (t < 0.0 || t >= order) return 0.0;
  const int degree = order - 1;
  const int span = static_cast<int>(std::floor(t));
  // Control points c_i = [i == 0] for basis functions with support [i, i+order).
  std::vector<double> d(static_cast<std::size_t>(degree + 1));
  for (int j = 0; j <= degree; ++j) d[static_cast<std::size_t>(j)] = (j + span - degree == 0) ? 1.0 : 0.0;
  for (int r = 1; r <= degree; ++r) {
    for (int j = degree; j >= r; --j) {
      const double knot_lo = j + span - degree;
      const double knot_hi = j + 1 + span - r;
      const double alpha = (t - knot_lo) / (knot_hi - knot_lo);
      d[static_cast<std::size_t>(j)] = (1.0 - alpha) * d[static_cast<std::size_t>(j - 1)] + alpha * d[static_cast<std::size_t>(j)];
    }
  }
  return d[static_cast<std::size_t>(degree)];
}

std::size_t piece_index(const PiecewisePoly& pw, const Rational& t) {
  // breakpoints are strictly increasing; piece i covers [b_i, b_{i+1}).
  auto it = std::upper_bound(pw.breakpoints.begin(), pw.breakpoints.end(), t);
  return static_cast<std::size_t>(it - pw.breakpoints.begin()) - 1;
}

}  // namespace

Rational GeneratorSpec::support_length() const {
  return std::visit(overloaded{
                        [](const BSpline& b) { return Rational(b.order); },
                        [](const PiecewisePoly& p) { return p.breakpoints.back(); },
                    },
                    kind);
}

void validate_generator(const GeneratorSpec& g) {
  std::visit(overloaded{
                 [](const BSpline& b) {
                   if (b.order < 2) {
                     throw Error(ErrorKind::InvalidProblem,
                                 "B-spline order must be at least 2 (order 1 is discontinuous)");
                   }
                 },
                 [](const PiecewisePoly& p) {
                   if (p.breakpoints.size() < 2 || p.pieces.size() + 1 != p.breakpoints.size()) {
                     throw Error(ErrorKind::InvalidProblem, "piecewise generator needs k+1 breakpoints for k pieces");
                   }
                   if (sgn(p.breakpoints.front()) != 0) {
                     throw Error(ErrorKind::InvalidProblem, "piecewise generator support must start at 0");
                   }
                   for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i) {
                     if (p.breakpoints[i] >= p.breakpoints[i + 1]) {
                       throw Error(ErrorKind::InvalidProblem, "breakpoints must be strictly increasing");
                     }
                   }
                   // Continuity, including the zero boundary values at both ends.
                   for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                     const Rational& b = p.breakpoints[i];
                     const Rational left = i == 0 ? Rational(0) : horner(p.pieces[i - 1], b);
                     const Rational right = i + 1 == p.breakpoints.size() ? Rational(0) : horner(p.pieces[i], b);
                     if (left != right) {
                       throw Error(ErrorKind::InvalidProblem,
                                   "piecewise generator is discontinuous at t = " + to_string(b));
                     }
                   }
                 },
             },
             g.kind);
}

Support lphi_support(const GeneratorSpec& g, const SystemSpec& sys) {
  const Rational len = g.support_length();
  return std::visit(overloaded{
                        [&](const Identity&) { return Support{0, len}; },
                        [&](const Shift& sh) { return Support{-sh.d, len - sh.d}; },
                        [&](const FirCombination& fir) {
                          bool any = false;
                          Rational lo, hi;
                          for (const auto& tap : fir.taps) {
                            if (is_zero(tap.weight)) continue;
                            if (!any || tap.delay < lo) lo = tap.delay;
                            if (!any || tap.delay > hi) hi = tap.delay;
                            any = true;
                          }
                          if (!any) throw Error(ErrorKind::DegenerateProblem, "FIR system has no nonzero tap");
                          return Support{lo, hi + len};
                        },
                    },
                    sys.kind);
}

int support_bound(const GeneratorSpec& g, const SystemSpec& sys) {
  const Support sup = lphi_support(g, sys);
  if (sgn(sup.lo) < 0) {
    throw Error(ErrorKind::InvalidProblem,
                "supp(L phi) starts at " + to_string(sup.lo) + " < 0; it must lie in [0, N]");
  }
  return static_cast<int>(ceil_to_long(sup.hi));
}

SamplingProblem make_problem(GeneratorSpec g, SystemSpec sys, int r, int s) {
  SamplingProblem p;
  p.generator = std::move(g);
  p.system = std::move(sys);
  p.r = r;
  p.s = s;
  validate_generator(p.generator);
  p.N = support_bound(p.generator, p.system);
  validate_problem(p);
  return p;
}

void validate_problem(const SamplingProblem& p) {
  validate_generator(p.generator);
  const int n = support_bound(p.generator, p.system);
  if (n != p.N) {
    throw Error(ErrorKind::InvalidProblem,
                "stored N = " + std::to_string(p.N) + " disagrees with the support bound " + std::to_string(n));
  }
  if (p.r < 1 || p.s < 1) throw Error(ErrorKind::InvalidProblem, "r and s must be positive");
  if (p.s <= p.r) throw Error(ErrorKind::InvalidProblem, "oversampling needs s > r");
  if (p.N <= 1) throw Error(ErrorKind::InvalidProblem, "support bound N must exceed 1");
  if (p.N > p.r) {
    throw Error(ErrorKind::InvalidProblem,
                "N = " + std::to_string(p.N) + " exceeds r = " + std::to_string(p.r) + "; choose r >= N");
  }
}

Rational generator_eval(const GeneratorSpec& g, const Rational& t) {
  return std::visit(overloaded{
                        [&](const BSpline& b) { return bspline_exact(b.order, t); },
                        [&](const PiecewisePoly& p) {
                          if (t < p.breakpoints.front() || t >= p.breakpoints.back()) return Rational(0);
                          return horner(p.pieces[piece_index(p, t)], t);
                        },
                    },
                    g.kind);
}

double generator_eval_double(const GeneratorSpec& g, double t) {
  return std::visit(overloaded{
                        [&](const BSpline& b) { return bspline_de_boor(b.order, t); },
                        [&](const PiecewisePoly& p) {
                          if (t < p.breakpoints.front().get_d() || t >= p.breakpoints.back().get_d()) return 0.0;
                          std::size_t i = 0;
                          while (i + 2 < p.breakpoints.size() && t >= p.breakpoints[i + 1].get_d()) ++i;
                          return horner(p.pieces[i], t);
                        },
                    },
                    g.kind);
}

Rational lphi_eval(const GeneratorSpec& g, const SystemSpec& sys, const Rational& t) {
  return std::visit(overloaded{
                        [&](const Identity&) { return generator_eval(g, t); },
                        [&](const Shift& sh) { return generator_eval(g, t + sh.d); },
                        [&](const FirCombination& fir) {
                          Rational acc = 0;
                          for (const auto& tap : fir.taps) acc += tap.weight * generator_eval(g, t - tap.delay);
                          return acc;
                        },
                    },
                    sys.kind);
}

Rational SampleTable::at(int j, int n) const {
  if (j < 1 || j > s) throw Error(ErrorKind::InvalidArgument, "channel index out of range");
  const auto& row = rows[static_cast<std::size_t>(j - 1)];
  auto it = row.find(n);
  return it == row.end() ? Rational(0) : it->second;
}

SampleTable lphi_samples(const SamplingProblem& p) {
  const Support sup = lphi_support(p.generator, p.system);
  SampleTable table;
  table.r = p.r;
  table.s = p.s;
  table.rows.resize(static_cast<std::size_t>(p.s));
  for (int j = 1; j <= p.s; ++j) {
    const Rational offset = frac((j - 1) * p.r, p.s);
    const long lo = floor_to_long(sup.lo - offset);
    const long hi = ceil_to_long(sup.hi - offset);
    for (long n = lo; n <= hi; ++n) {
      Rational v = lphi_eval(p.generator, p.system, Rational(n) + offset);
      if (!is_zero(v)) table.rows[static_cast<std::size_t>(j - 1)].emplace(static_cast<int>(n), std::move(v));
    }
  }
  return table;
}

GMatrix build_G(const SamplingProblem& p) {
  const SampleTable table = lphi_samples(p);
  GMatrix gm;
  gm.r = p.r;
  gm.s = p.s;
  gm.g.resize(static_cast<std::size_t>(p.s));
  for (int j = 0; j < p.s; ++j) {
    for (const auto& [n, v] : table.rows[static_cast<std::size_t>(j)]) gm.g[static_cast<std::size_t>(j)].add_term(n, v);
    if (gm.g[static_cast<std::size_t>(j)].is_zero()) {
      throw Error(ErrorKind::DegenerateProblem, "row " + std::to_string(j + 1) + " of G(z) is identically zero");
    }
  }
  return gm;
}

Eigen::MatrixXcd GMatrix::eval(Complex z0) const {
  const Complex w = std::polar(1.0, -2.0 * std::numbers::pi / r);
  Eigen::MatrixXcd m(s, r);
  for (int k = 0; k < r; ++k) {
    const Complex zk = std::pow(w, k) * z0;
    for (int j = 0; j < s; ++j) m(j, k) = g[static_cast<std::size_t>(j)].eval(zk);
  }
  return m;
}

Eigen::MatrixXcd GMatrix::eval_frequency(double w) const {
  return eval(std::polar(1.0, -2.0 * std::numbers::pi * w));
}

}  // namespace oversamp

#include "oversamp/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace oversamp {

std::pair<double, double> ReconstructionFilters::support(int j) const {
  const auto& c = per_channel.at(static_cast<std::size_t>(j - 1));
  if (c.empty()) return {0.0, 0.0};
  return {static_cast<double>(c.begin()->first),
          static_cast<double>(c.rbegin()->first) + generator.support_length().get_d()};
}

double ReconstructionFilters::eval(int j, double t) const {
  double acc = 0.0;
  for (const auto& [n, c] : per_channel.at(static_cast<std::size_t>(j - 1))) {
    acc += c * generator_eval_double(generator, t - n);
  }
  return r * acc;
}

ReconstructionFilters filters_from_row(const std::vector<RealPoly>& a_row, const SamplingProblem& p) {
  if (a_row.size() != static_cast<std::size_t>(p.s)) throw Error(ErrorKind::WrongShape, "a_row needs s entries");
  ReconstructionFilters f;
  f.r = p.r;
  f.s = p.s;
  f.generator = p.generator;
  for (const auto& a : a_row) {
    std::map<int, double> c;
    for (const auto& [e, v] : a.terms()) c.emplace(e, v);
    f.per_channel.push_back(std::move(c));
  }
  return f;
}

SampleSequence sample_function(const std::map<int, Rational>& coeffs, const SamplingProblem& p,
                               std::optional<std::pair<long, long>> window) {
  SampleSequence out;
  std::map<int, Rational> nz;
  for (const auto& [k, a] : coeffs)
    if (!is_zero(a)) nz.emplace(k, a);
  if (!window) {
    if (nz.empty()) return out;
    const Support sup = lphi_support(p.generator, p.system);
    const Rational lo = Rational(nz.begin()->first) + sup.lo;
    const Rational hi = Rational(nz.rbegin()->first) + sup.hi;
    window = std::pair{ceil_to_long(lo * p.s / p.r), floor_to_long(hi * p.s / p.r)};
  }
  for (long m = window->first; m <= window->second; ++m) {
    const Rational t = Rational(m) * p.r / p.s;
    Rational v = 0;
    for (const auto& [k, a] : nz) v += a * lphi_eval(p.generator, p.system, t - k);
    out.emplace(m, std::move(v));
  }
  return out;
}

std::vector<long> required_samples(const ReconstructionFilters& f, double t) {
  std::vector<long> out;
  for (int j = 1; j <= f.s; ++j) {
    if (f.per_channel[static_cast<std::size_t>(j - 1)].empty()) continue;
    const auto [lo, hi] = f.support(j);
    // S_j(t - r n) can be nonzero only for lo < t - r n < hi.
    const long n_lo = static_cast<long>(std::floor((t - hi) / f.r));
    const long n_hi = static_cast<long>(std::ceil((t - lo) / f.r));
    for (long n = n_lo; n <= n_hi; ++n) out.push_back(f.s * n + j - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> reconstruct_eval(const SampleSequence& samples, const ReconstructionFilters& f,
                                     const std::vector<double>& t_grid) {
  std::vector<double> values;
  values.reserve(t_grid.size());
  std::set<long> missing;
  for (const double t : t_grid) {
    double acc = 0.0;
    for (const long m : required_samples(f, t)) {
      auto it = samples.find(m);
      if (it == samples.end()) {
        missing.insert(m);
        continue;
      }
      if (is_zero(it->second)) continue;
      const long n = (m >= 0 ? m : m - (f.s - 1)) / f.s;
      const int j = static_cast<int>(m - n * f.s) + 1;
      acc += it->second.get_d() * f.eval(j, t - static_cast<double>(f.r) * n);
    }
    values.push_back(acc);
  }
  if (!missing.empty()) {
    std::string what = "samples missing for " + std::to_string(missing.size()) + " indices starting at m = " +
                       std::to_string(*missing.begin());
    throw CoverageGapError(std::move(what), std::vector<long>(missing.begin(), missing.end()));
  }
  return values;
}

FilterDesign design_filters(const SamplingProblem& p, const DesignOptions& opts) {
  validate_problem(p);
  FilterDesign d;
  d.trace = reduce(p);
  d.report = existence_check(d.trace, opts.decision);
  if (!d.report.exists) return d;
  if (p.s == p.r + 1) {
    try {
      d.inverse = solve_min_oversampling(d.trace.full, p.N, p.r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionFailed) throw;
    }
  }
  if (!d.inverse) d.inverse = solve_general(d.trace.full, opts.nu_max > 0 ? opts.nu_max : p.r * p.N);
  d.backmapped = backmap_to_G(*d.inverse, p.r, p.s, d.trace.split.column_shift);
  d.filters = filters_from_row(d.backmapped->a_row, p);
  return d;
}

VerifyReport verify_reconstruction(const SamplingProblem& p, const ReconstructionFilters& filters, int trials,
                                   std::uint64_t seed) {
  VerifyReport rep;
  const double len = p.generator.support_length().get_d();
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::map<int, Rational> coeffs;
    for (int k = -3; k <= 3; ++k) coeffs.emplace(k, frac(std::lround(unif(rng) * 1000), 1000));

    const double t_lo = -3.0;
    const double t_hi = 3.0 + len;
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(t_lo + (t_hi - t_lo) * (i + 0.5) / 200.0);

    long m_lo = 0;
    long m_hi = -1;
    for (const double t : grid) {
      const auto need = required_samples(filters, t);
      if (need.empty()) continue;
      if (m_lo > m_hi) {
        m_lo = need.front();
        m_hi = need.back();
      }
      m_lo = std::min(m_lo, need.front());
      m_hi = std::max(m_hi, need.back());
    }
    const SampleSequence samples = sample_function(coeffs, p, std::pair{m_lo, m_hi});
    const std::vector<double> got = reconstruct_eval(samples, filters, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double f = 0.0;
      for (const auto& [k, a] : coeffs) f += a.get_d() * generator_eval_double(p.generator, grid[i] - k);
      err = std::max(err, std::abs(got[i] - f));
    }
    rep.per_trial.push_back(err);
    rep.max_error = std::max(rep.max_error, err);
  }
  return rep;
}

VerifyReport verify_reconstruction(const SamplingProblem& p, int trials, std::uint64_t seed,
                                   const DesignOptions& opts) {
  const FilterDesign d = design_filters(p, opts);
  if (!d.report.exists) {
    throw Error(ErrorKind::PreconditionFailed, "no compactly supported reconstruction filters exist for this problem");
  }
  return verify_reconstruction(p, *d.filters, trials, seed);
}

}  // namespace oversamp

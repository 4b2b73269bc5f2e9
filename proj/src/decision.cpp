#include "oversamp/decision.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace oversamp {

bool monomial_minor_oracle(const ExactPolyMatrix& g, std::size_t guard) {
  const std::size_t s = g.rows();
  const std::size_t r = g.cols();
  if (r > s) return false;
  if (binomial(s, r) > guard) {
    throw Error(ErrorKind::OracleTooLarge, "C(" + std::to_string(s) + ", " + std::to_string(r) +
                                               ") maximal minors exceed the guard of " + std::to_string(guard));
  }
  std::vector<std::size_t> all_cols(r);
  for (std::size_t j = 0; j < r; ++j) all_cols[j] = j;
  std::optional<ExactPoly> acc;
  for (const auto& rows : combinations(s, r)) {
    ExactPoly d = determinant(g.submatrix(rows, all_cols));
    if (d.is_zero()) continue;
    acc = acc ? poly_gcd({*acc, d}) : poly_gcd({d});
    if (acc->is_monomial()) return true;
  }
  return false;
}

bool monomial_minor_oracle(const SamplingProblem& p, std::size_t guard) {
  const GMatrix g = build_G(p);
  return monomial_minor_oracle(harmonic_matrix(to_algebraic(g), p.r), guard);
}

FrameScan frame_scan(const std::function<Eigen::MatrixXcd(double)>& g_of_w, int r, int grid_size, double rank_tol) {
  if (grid_size < 16) throw Error(ErrorKind::InvalidArgument, "frame scan grid size must be at least 16");
  FrameScan out;
  out.grid_size = grid_size;
  out.alpha_hat = std::numeric_limits<double>::infinity();
  out.beta_hat = 0.0;
  out.min_rank = std::numeric_limits<int>::max();
  for (int k = 0; k < grid_size; ++k) {
    const double w = (k + 0.5) / (static_cast<double>(r) * grid_size);
    const Eigen::MatrixXcd gw = g_of_w(w);
    const Eigen::MatrixXcd gram = gw.adjoint() * gw;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.alpha_hat = std::min(out.alpha_hat, ev.minCoeff());
    out.beta_hat = std::max(out.beta_hat, ev.maxCoeff());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gw);
    const auto& sv = svd.singularValues();
    const double thr = rank_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rk = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > thr) ++rk;
    out.min_rank = std::min(out.min_rank, rk);
  }
  return out;
}

FrameScan frame_scan(const SamplingProblem& p, int grid_size, double rank_tol) {
  const GMatrix g = build_G(p);
  return frame_scan([&](double w) { return g.eval_frequency(w); }, p.r, grid_size, rank_tol);
}

bool sufficient_pattern_check(const ExactPencil& p, int N, int r) {
  if (r < 1 || p.cols() != static_cast<std::size_t>(r) || p.rows() != static_cast<std::size_t>(r + 1)) {
    throw Error(ErrorKind::WrongShape, "sufficient pattern needs an (r+1) x r pencil");
  }
  const int s = r + 1;
  for (int i = 1; i <= s; ++i) {
    for (int j = 1; j <= r; ++j) {
      const auto a = p.A(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      const auto b = p.B(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      if ((i + j == r + 2 || i + j == r + N + 1) && is_zero(a)) return false;
      if (i + j == N + 1 && i >= 2 && is_zero(b)) return false;
    }
  }
  return true;
}

namespace {

// M2 up to left equivalence: rows of M taken against an orthonormal basis of
// the left null space of the scalar block. Same Kronecker structure as the
// exact R M, far better scaled than the elimination rows.
FloatPencil orthonormal_m2(const SplitForm& split) {
  const Eigen::MatrixXd scalar = to_eigen(split.scalar());
  const auto c = scalar.cols();
  const auto s = scalar.rows();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scalar, Eigen::ComputeFullU);
  const Eigen::MatrixXd basis = svd.matrixU().rightCols(s - c).transpose();
  const Eigen::MatrixXd a = basis * to_eigen(split.m_constant());
  const Eigen::MatrixXd b = -(basis * to_eigen(split.m_lambda()));
  Matrix<double> A(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  Matrix<double> B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a(i, j);
      B(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = b(i, j);
    }
  return FloatPencil(std::move(A), std::move(B));
}

}  // namespace

ExistenceReport existence_check(const ReductionTrace& trace, const DecisionOptions& opts) {
  const int r = trace.split.r;
  const int N = trace.split.N;
  const auto s = static_cast<int>(trace.split.s());
  ExistenceReport rep;
  rep.scalar_rank_ok = trace.scalar_rank_ok();
  bool pencil_oracle = false;
  bool spectrum_match = true;
  if (rep.scalar_rank_ok) {
    const ExactPencil& m2 = trace.compression->M2;
    try {
      rep.kronecker = staircase(orthonormal_m2(trace.split), opts.staircase);
    } catch (const RankAmbiguousError& e) {
      throw RankAmbiguousError(std::string("staircase on M2: ") + e.what(), e.singular_values(), e.threshold());
    }
    rep.no_right_singular = !rep.kronecker->has_right_singular_part();
    rep.only_zero_finite_eigenvalue = !rep.kronecker->has_finite_nonzero_eigenvalues();
    const SpectrumOracle so = spectrum_oracle(m2);
    pencil_oracle = so.normal_rank == static_cast<std::size_t>(N - 1) && so.only_zero_eigenvalue();
    spectrum_match = oracle_agrees(*rep.kronecker, so);
  }
  rep.exists = rep.scalar_rank_ok && rep.no_right_singular && rep.only_zero_finite_eigenvalue;

  bool agree = spectrum_match && (!rep.scalar_rank_ok || pencil_oracle == rep.exists);
  if (binomial(static_cast<std::size_t>(s), static_cast<std::size_t>(r)) <= opts.minor_guard) {
    rep.minor_oracle = monomial_minor_oracle(trace.hat_g, opts.minor_guard);
    agree = agree && *rep.minor_oracle == rep.exists;
    rep.oracle_agrees = agree;
  } else {
    rep.warnings.push_back("minor oracle skipped: C(s, r) exceeds the guard");
    if (rep.scalar_rank_ok) rep.oracle_agrees = agree;
  }
  if (rep.oracle_agrees == false) {
    rep.warnings.push_back("staircase and exact oracles disagree; the pencil may be too ill-conditioned for tol");
  }
  if (s == r + 1) rep.sufficient_pattern_holds = sufficient_pattern_check(trace.full, N, r);
  if (opts.grid_size > 0) {
    const GMatrix& g = trace.g;
    rep.frame_scan = frame_scan([&](double w) { return g.eval_frequency(w); }, r, opts.grid_size, opts.staircase.tol);
  }
  return rep;
}

ExistenceReport existence_check(const SamplingProblem& p, const DecisionOptions& opts) {
  validate_problem(p);
  return existence_check(reduce(p), opts);
}

}  // namespace oversamp

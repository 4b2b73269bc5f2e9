#include "oversamp/leftinv.hpp"

#include <numbers>

namespace oversamp {

namespace {

template <class T>
Matrix<T> stacked_system(const Matrix<T>& a_t, const Matrix<T>& b_t, int nu) {
  const Matrix<T> a = a_t.transpose();
  const Matrix<T> b = b_t.transpose();
  const std::size_t r = a.rows();
  const std::size_t s = a.cols();
  const auto blocks = static_cast<std::size_t>(nu + 1);
  Matrix<T> sys((blocks + 1) * r, blocks * s);
  const Matrix<T> minus_b = -b;
  for (std::size_t k = 0; k < blocks; ++k) {
    sys.set_block(k * r, k * s, minus_b);
    sys.set_block((k + 1) * r, k * s, a);
  }
  return sys;
}

// Unknown block k of the stacked solution holds l^{nu-k}.
template <class T>
std::vector<Matrix<T>> unstack(const Matrix<T>& x, std::size_t s, std::size_t r, int nu) {
  std::vector<Matrix<T>> coeffs(static_cast<std::size_t>(nu + 1));
  for (int k = 0; k <= nu; ++k) {
    coeffs[static_cast<std::size_t>(nu - k)] = x.block(static_cast<std::size_t>(k) * s, 0, s, r);
  }
  return coeffs;
}

LeftInverse from_exact(const ExactPencil& p, std::vector<RationalMatrix> coeffs, int nu, int kappa) {
  LeftInverse out;
  out.nu = nu;
  out.valuation = -kappa;
  for (const auto& c : coeffs) out.coefficients.push_back(to_eigen(c));
  // Coefficients of (A^T - lambda B^T)^T L_poly - lambda^kappa I, checked exactly.
  const RationalMatrix a = p.A.transpose();
  const RationalMatrix b = p.B.transpose();
  const std::size_t r = p.cols();
  bool exact_zero = true;
  for (int m = 0; m <= nu + 1 && exact_zero; ++m) {
    RationalMatrix c(r, r);
    if (m <= nu) c = c + a * coeffs[static_cast<std::size_t>(m)];
    if (m >= 1) c = c - b * coeffs[static_cast<std::size_t>(m - 1)];
    if (m == kappa) c = c - RationalMatrix::identity(r);
    exact_zero = c.is_zero();
  }
  out.exact = std::move(coeffs);
  out.residual_norm = exact_zero ? 0.0 : coefficient_residual(out, p.cast<double>());
  return out;
}

}  // namespace

Eigen::MatrixXcd LeftInverse::eval(Complex lambda) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(s()), static_cast<Eigen::Index>(r()));
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * lambda + it->cast<Complex>();
  return acc * std::pow(lambda, valuation);
}

RationalMatrix block_system(const ExactPencil& p, int nu) {
  if (nu < 0) throw Error(ErrorKind::InvalidArgument, "nu must be nonnegative");
  return stacked_system(p.A, p.B, nu);
}

RationalMatrix block_rhs(std::size_t r, int nu, int kappa) {
  if (kappa < 0 || kappa > nu + 1) throw Error(ErrorKind::InvalidArgument, "kappa must lie in [0, nu + 1]");
  RationalMatrix rhs(static_cast<std::size_t>(nu + 2) * r, r);
  rhs.set_block(static_cast<std::size_t>(nu + 1 - kappa) * r, 0, RationalMatrix::identity(r));
  return rhs;
}

LeftInverse solve_min_oversampling(const ExactPencil& p, int N, int r) {
  if (r < 1 || p.cols() != static_cast<std::size_t>(r) || p.rows() != static_cast<std::size_t>(r + 1)) {
    throw Error(ErrorKind::WrongShape, "minimal oversampling solver needs an (r+1) x r pencil");
  }
  if (N < 2 || N > r) throw Error(ErrorKind::PreconditionFailed, "needs 1 < N <= r");
  const auto ur = static_cast<std::size_t>(r);
  const auto un = static_cast<std::size_t>(N);
  if (rank(p.A) != ur) throw Error(ErrorKind::PreconditionFailed, "rank A^T != r");
  if (rank(p.B) != un - 1) throw Error(ErrorKind::PreconditionFailed, "rank B^T != N - 1");
  if (rank(block_system(p, 1).block(0, 0, 2 * ur, 2 * (ur + 1))) != ur + un - 1) {
    throw Error(ErrorKind::PreconditionFailed, "rank [-B 0; A -B] != r + N - 1");
  }
  const int nu = N - 2;
  const RationalMatrix sys = block_system(p, nu);
  if (rank(sys) != sys.cols()) {
    throw Error(ErrorKind::PreconditionFailed, "block system lacks full column rank; no unique inverse");
  }
  auto x = solve_exact(sys, block_rhs(ur, nu));
  if (!x) throw Error(ErrorKind::NoPolynomialInverse, "block system is inconsistent; no polynomial left inverse");
  return from_exact(p, unstack(*x, p.rows(), ur, nu), nu, 0);
}

LeftInverse solve_general(const ExactPencil& p, int nu_max) {
  const std::size_t r = p.cols();
  for (int nu = 0; nu <= nu_max; ++nu) {
    const RationalMatrix sys = block_system(p, nu);
    for (int kappa = 0; kappa <= nu + 1; ++kappa) {
      auto x = solve_exact(sys, block_rhs(r, nu, kappa));
      if (x) return from_exact(p, unstack(*x, p.rows(), r, nu), nu, kappa);
    }
  }
  throw DegreeCapExceededError("no polynomial left inverse of degree <= " + std::to_string(nu_max), nu_max);
}

LeftInverse solve_general(const FloatPencil& p, int nu_max, double tol) {
  const auto r = static_cast<Eigen::Index>(p.cols());
  const auto s = static_cast<Eigen::Index>(p.rows());
  for (int nu = 0; nu <= nu_max; ++nu) {
    const Eigen::MatrixXd sys = to_eigen(stacked_system(p.A, p.B, nu));
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys);
    cod.setThreshold(tol);
    for (int kappa = 0; kappa <= nu + 1; ++kappa) {
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(sys.rows(), r);
      rhs.block((nu + 1 - kappa) * r, 0, r, r).setIdentity();
      const Eigen::MatrixXd x = cod.solve(rhs);
      if ((sys * x - rhs).norm() > tol * (sys.norm() * x.norm() + rhs.norm())) continue;
      LeftInverse out;
      out.nu = nu;
      out.valuation = -kappa;
      out.coefficients.resize(static_cast<std::size_t>(nu + 1));
      for (int k = 0; k <= nu; ++k) out.coefficients[static_cast<std::size_t>(nu - k)] = x.block(k * s, 0, s, r);
      out.residual_norm = coefficient_residual(out, p);
      return out;
    }
  }
  throw DegreeCapExceededError("no polynomial left inverse of degree <= " + std::to_string(nu_max), nu_max);
}

double residual_at(const LeftInverse& l, const FloatPencil& p, const std::vector<Complex>& lambdas) {
  const Eigen::MatrixXcd a = to_eigen(p.A).cast<Complex>();
  const Eigen::MatrixXcd b = to_eigen(p.B).cast<Complex>();
  const auto r = static_cast<Eigen::Index>(p.cols());
  double worst = 0.0;
  for (const Complex lam : lambdas) {
    const Eigen::MatrixXcd prod = l.eval(lam).transpose() * (a - lam * b);
    worst = std::max(worst, (prod - Eigen::MatrixXcd::Identity(r, r)).norm());
  }
  return worst;
}

double coefficient_residual(const LeftInverse& l, const FloatPencil& p) {
  const Eigen::MatrixXd a = to_eigen(p.A);
  const Eigen::MatrixXd b = to_eigen(p.B);
  const auto r = static_cast<Eigen::Index>(p.cols());
  double worst = 0.0;
  for (int m = 0; m <= l.nu + 1; ++m) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(r, r);
    if (m <= l.nu) c += l.coefficients[static_cast<std::size_t>(m)].transpose() * a;
    if (m >= 1) c -= l.coefficients[static_cast<std::size_t>(m - 1)].transpose() * b;
    if (m == -l.valuation) c -= Eigen::MatrixXd::Identity(r, r);
    worst = std::max(worst, c.norm());
  }
  return worst;
}

BackMapped backmap_to_G(const LeftInverse& l, int r, int s, const std::vector<int>& column_shift, double imag_tol) {
  if (l.r() != static_cast<std::size_t>(r) || l.s() != static_cast<std::size_t>(s)) {
    throw Error(ErrorKind::WrongShape, "left inverse shape does not match (s, r)");
  }
  std::vector<int> shift = column_shift;
  if (shift.empty()) {
    for (int q = 0; q < r; ++q) shift.push_back(q);
  }
  if (shift.size() != static_cast<std::size_t>(r)) throw Error(ErrorKind::WrongShape, "column_shift needs r entries");

  auto w_pow = [r](int e) { return std::polar(1.0, -2.0 * std::numbers::pi * (((e % r) + r) % r) / r); };
  BackMapped out;
  out.LG = PolyMatrix<Complex>(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < s; ++j) {
      ComplexPoly entry;
      for (int q = 0; q < r; ++q) {
        const Complex factor = w_pow(k * (r - 1) - k * q) / static_cast<double>(r);
        const int base = r - 1 - shift[static_cast<std::size_t>(q)];
        for (int m = 0; m <= l.nu; ++m) {
          const double c = l.coefficients[static_cast<std::size_t>(m)](j, q);
          if (c != 0.0) entry.add_term(base + r * (m + l.valuation), factor * c);
        }
      }
      out.LG(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = std::move(entry);
    }
  }
  for (int j = 0; j < s; ++j) {
    RealPoly a;
    for (const auto& [e, v] : out.LG(0, static_cast<std::size_t>(j)).terms()) {
      if (std::abs(v.imag()) > imag_tol) {
        throw Error(ErrorKind::NonRealFilters, "filter coefficient has imaginary part " + std::to_string(v.imag()));
      }
      a.add_term(e, v.real());
    }
    out.a_row.push_back(std::move(a));
  }
  return out;
}

std::vector<Eigen::MatrixXd> inverse_family_projector(const FloatPencil& p, const LeftInverse& l) {
  const Eigen::MatrixXd a = to_eigen(p.A);
  const Eigen::MatrixXd b = to_eigen(p.B);
  const auto s = static_cast<Eigen::Index>(p.rows());
  std::vector<Eigen::MatrixXd> out;
  for (int m = 0; m <= l.nu + 1; ++m) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(s, s);
    if (m == -l.valuation) c.setIdentity();
    if (m <= l.nu) c -= a * l.coefficients[static_cast<std::size_t>(m)].transpose();
    if (m >= 1) c += b * l.coefficients[static_cast<std::size_t>(m - 1)].transpose();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace oversamp

#include "oversamp/reduction.hpp"

#include <numbers>

namespace oversamp {

std::vector<ExactPoly> to_algebraic(const GMatrix& g) {
  const int r = g.r;
  std::vector<ExactPoly> out;
  out.reserve(g.g.size());
  for (std::size_t j = 0; j < g.g.size(); ++j) {
    const ExactPoly& gj = g.g[j];
    if (gj.is_zero()) throw Error(ErrorKind::DegenerateProblem, "zero row in G(z)");
    if (gj.valuation() < -(r - 1)) {
      throw Error(ErrorKind::DegreeBound, "g_" + std::to_string(j + 1) + " has valuation below -(r-1)");
    }
    ExactPoly t = gj.shifted(r - 1);
    if (t.degree() >= 2 * r) {
      throw Error(ErrorKind::DegreeBound,
                  "g~_" + std::to_string(j + 1) + " has degree " + std::to_string(t.degree()) + " >= 2r; N <= r violated");
    }
    out.push_back(std::move(t));
  }
  return out;
}

ExactPolyMatrix harmonic_matrix(const std::vector<ExactPoly>& g_tilde, int r) {
  ExactPolyMatrix hat(g_tilde.size(), static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < g_tilde.size(); ++i) {
    if (!g_tilde[i].is_zero() && g_tilde[i].degree() >= 2 * r) {
      throw Error(ErrorKind::NonMonomialHarmonic, "harmonic_matrix needs degree < 2r");
    }
    auto parts = harmonic_split(g_tilde[i], r);
    for (std::size_t q = 0; q < parts.size(); ++q) {
      if (parts[q].term_count() > 1) {
        throw Error(ErrorKind::NonMonomialHarmonic, "harmonic of order " + std::to_string(q) + " is not a monomial");
      }
      hat(i, q) = std::move(parts[q]);
    }
  }
  return hat;
}

SplitForm normalize_and_split(const ExactPolyMatrix& hat_g, int N) {
  const std::size_t s = hat_g.rows();
  const int r = static_cast<int>(hat_g.cols());
  if (N < 2 || N > r) throw Error(ErrorKind::InvalidArgument, "normalize_and_split needs 1 < N <= r");
  SplitForm out;
  out.r = r;
  out.N = N;
  out.constant = RationalMatrix(s, static_cast<std::size_t>(r));
  out.lambda = RationalMatrix(s, static_cast<std::size_t>(r));
  out.column_shift.assign(static_cast<std::size_t>(r), 0);
  for (int q = 0; q < r; ++q) {
    const auto col = static_cast<std::size_t>(q);
    // After dividing by z^q every entry is c z^{k r}, k in {0, 1}.
    bool has_const = false;
    bool has_lambda = false;
    for (std::size_t i = 0; i < s; ++i) {
      const ExactPoly& e = hat_g(i, col);
      if (e.is_zero()) continue;
      if (!e.is_monomial()) throw Error(ErrorKind::NonMonomialHarmonic, "harmonic entry is not a monomial");
      const int k = e.degree() - q;
      if (k == 0) {
        has_const = true;
      } else if (k == r) {
        has_lambda = true;
      } else {
        throw Error(ErrorKind::NonMonomialHarmonic, "harmonic exponent outside {q, q + r}");
      }
    }
    int shift = q;
    if (q >= N - 1) {
      if (has_const && has_lambda) {
        throw Error(ErrorKind::MixedTrailingColumn,
                    "trailing column " + std::to_string(q + 1) + " mixes z^0 and z^r terms");
      }
      if (has_lambda) shift = q + r;
    }
    out.column_shift[col] = shift;
    for (std::size_t i = 0; i < s; ++i) {
      const ExactPoly& e = hat_g(i, col);
      if (e.is_zero()) continue;
      const int k = e.degree() - shift;
      (k == 0 ? out.constant : out.lambda)(i, col) = e.leading();
    }
  }
  return out;
}

RowCompression row_compress(const SplitForm& split, const std::optional<RationalMatrix>& r_override) {
  const std::size_t s = split.s();
  const auto c = static_cast<std::size_t>(split.r - split.N + 1);
  const RationalMatrix scalar = split.scalar();
  RationalMatrix R;
  if (r_override) {
    R = *r_override;
    if (R.rows() != s || R.cols() != s || determinant(R) == 0) {
      throw Error(ErrorKind::InvalidArgument, "override R must be an invertible s x s matrix");
    }
    const RationalMatrix rs = R * scalar;
    if (!rs.block(c, 0, s - c, c).is_zero()) {
      throw Error(ErrorKind::InvalidArgument, "override R does not annihilate the scalar block below its top rows");
    }
    if (rank(rs.block(0, 0, c, c)) < c) {
      throw Error(ErrorKind::RankDeficientScalarPart, "scalar block has rank below r - N + 1");
    }
  } else if (scalar.block(c, 0, s - c, c).is_zero() && rank(scalar.block(0, 0, c, c)) == c) {
    R = RationalMatrix::identity(s);
  } else {
    RationalMatrix work = scalar;
    R = RationalMatrix::identity(s);
    for (std::size_t col = 0; col < c; ++col) {
      std::size_t pivot = s;
      for (std::size_t i = s; i-- > col;) {
        if (!is_zero(work(i, col))) {
          pivot = i;
          break;
        }
      }
      if (pivot == s) {
        throw Error(ErrorKind::RankDeficientScalarPart, "scalar block has rank below r - N + 1");
      }
      if (pivot != col) {
        for (std::size_t j = 0; j < c; ++j) std::swap(work(pivot, j), work(col, j));
        for (std::size_t j = 0; j < s; ++j) std::swap(R(pivot, j), R(col, j));
      }
      for (std::size_t i = col + 1; i < s; ++i) {
        if (is_zero(work(i, col))) continue;
        const Rational f = work(i, col) / work(col, col);
        for (std::size_t j = 0; j < c; ++j) work(i, j) -= f * work(col, j);
        for (std::size_t j = 0; j < s; ++j) R(i, j) -= f * R(col, j);
      }
    }
  }

  RowCompression out;
  out.R = R;
  out.scalar_prime = (R * scalar).block(0, 0, c, c);
  const RationalMatrix rm_const = R * split.m_constant();
  const RationalMatrix rm_lambda = R * split.m_lambda();
  const auto nm = static_cast<std::size_t>(split.N - 1);
  // M_i(lambda) = M_i1 - lambda M_i2, so the B part is minus the lambda part.
  out.M1 = ExactPencil(rm_const.block(0, 0, c, nm), -rm_lambda.block(0, 0, c, nm));
  out.M2 = ExactPencil(rm_const.block(c, 0, s - c, nm), -rm_lambda.block(c, 0, s - c, nm));
  return out;
}

ExactPencil full_pencil(const SplitForm& split) { return ExactPencil(split.constant, -split.lambda); }

ExactPencil full_pencil(const ExactPolyMatrix& tilde_g) {
  RationalMatrix a(tilde_g.rows(), tilde_g.cols());
  RationalMatrix b(tilde_g.rows(), tilde_g.cols());
  for (std::size_t i = 0; i < tilde_g.rows(); ++i) {
    for (std::size_t j = 0; j < tilde_g.cols(); ++j) {
      for (const auto& [e, v] : tilde_g(i, j).terms()) {
        if (e == 0) {
          a(i, j) = v;
        } else if (e == 1) {
          b(i, j) = -v;
        } else {
          throw Error(ErrorKind::NotAffine, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                ") is not affine in lambda");
        }
      }
    }
  }
  return ExactPencil(a, b);
}

ReductionTrace reduce(const SamplingProblem& p, const std::optional<RationalMatrix>& r_override) {
  ReductionTrace t;
  t.g = build_G(p);
  t.g_tilde = to_algebraic(t.g);
  t.hat_g = harmonic_matrix(t.g_tilde, p.r);
  t.split = normalize_and_split(t.hat_g, p.N);
  t.scalar_rank = rank(t.split.scalar());
  t.full = full_pencil(t.split);
  if (t.scalar_rank == static_cast<std::size_t>(p.r - p.N + 1)) {
    t.compression = row_compress(t.split, r_override);
  }
  return t;
}

Eigen::MatrixXcd fourier_matrix(int r) {
  const Complex w = std::polar(1.0, -2.0 * std::numbers::pi / r);
  Eigen::MatrixXcd omega(r, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) omega(j, k) = std::pow(w, (j * k) % r);
  return omega;
}

}  // namespace oversamp

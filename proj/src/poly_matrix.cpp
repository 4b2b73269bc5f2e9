#include "oversamp/poly_matrix.hpp"

#include <limits>
#include <numeric>

namespace oversamp {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    if (out > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
    out = out * num / i;
  }
  return out;
}

namespace {

ExactPoly cofactor_det(const ExactPolyMatrix& m) {
  switch (m.rows()) {
    case 0: return ExactPoly::one();
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default: {
      ExactPoly acc;
      for (std::size_t j = 0; j < 3; ++j) {
        const ExactPoly minor = m((1), (j + 1) % 3) * m(2, (j + 2) % 3) - m(1, (j + 2) % 3) * m(2, (j + 1) % 3);
        acc += m(0, j) * minor;
      }
      return acc;
    }
  }
}

ExactPoly bareiss_det(ExactPolyMatrix a) {
  const std::size_t n = a.rows();
  ExactPoly prev = ExactPoly::one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = exact_divide(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      }
      a(i, k) = ExactPoly{};
    }
    prev = a(k, k);
  }
  ExactPoly det = a(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace

ExactPoly determinant(const ExactPolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square poly matrix");
  if (m.rows() <= 3) return cofactor_det(m);
  return bareiss_det(m);
}

std::vector<ExactPoly> minors(const ExactPolyMatrix& m, std::size_t k) {
  if (k > std::min(m.rows(), m.cols())) {
    throw Error(ErrorKind::InvalidArgument, "minor order exceeds matrix size");
  }
  const auto row_sets = combinations(m.rows(), k);
  const auto col_sets = combinations(m.cols(), k);
  std::vector<ExactPoly> out;
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) out.push_back(determinant(m.submatrix(rs, cs)));
  return out;
}

std::size_t normal_rank(const ExactPolyMatrix& m) {
  const std::size_t kmax = std::min(m.rows(), m.cols());
  // Ranks are monotone in k, so walk down from the top.
  for (std::size_t k = kmax; k > 0; --k) {
    const auto row_sets = combinations(m.rows(), k);
    const auto col_sets = combinations(m.cols(), k);
    for (const auto& rs : row_sets)
      for (const auto& cs : col_sets)
        if (!determinant(m.submatrix(rs, cs)).is_zero()) return k;
  }
  return 0;
}

std::vector<ExactPoly> invariant_polynomials(const ExactPolyMatrix& m) {
  std::vector<ExactPoly> out;
  ExactPoly prev = ExactPoly::one();
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    auto ms = minors(m, k);
    bool any = false;
    for (const auto& p : ms) any = any || !p.is_zero();
    if (!any) break;
    ExactPoly d = poly_gcd(ms);
    out.push_back(exact_divide(d, prev));
    prev = std::move(d);
  }
  return out;
}

}  // namespace oversamp

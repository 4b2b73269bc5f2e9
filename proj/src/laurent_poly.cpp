#include "oversamp/laurent_poly.hpp"

#include <sstream>

namespace oversamp {

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  if ((!a.is_zero() && a.valuation() < 0) || b.valuation() < 0) {
    throw Error(ErrorKind::NegativeExponent, "divmod expects algebraic polynomials");
  }
  ExactPoly q;
  ExactPoly rem = a;
  const int db = b.degree();
  const Rational lead = b.leading();
  while (!rem.is_zero() && rem.degree() >= db) {
    const int shift = rem.degree() - db;
    const Rational c = rem.leading() / lead;
    q.add_term(shift, c);
    rem -= b.mul_monomial(c, shift);
  }
  return {std::move(q), std::move(rem)};
}

ExactPoly exact_divide(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  if (a.is_zero()) return {};
  const int va = a.valuation();
  const int vb = b.valuation();
  auto [q, rem] = divmod(a.shifted(-va), b.shifted(-vb));
  if (!rem.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  return q.shifted(va - vb);
}

namespace {

ExactPoly monic(const ExactPoly& p) { return p.scaled(Rational(1) / p.leading()); }

ExactPoly gcd2(ExactPoly a, ExactPoly b) {
  while (!b.is_zero()) {
    auto rem = divmod(a, b).second;
    a = std::move(b);
    b = std::move(rem);
  }
  return monic(a);
}

}  // namespace

ExactPoly poly_gcd(const std::vector<ExactPoly>& ps) {
  std::vector<const ExactPoly*> nonzero;
  for (const auto& p : ps)
    if (!p.is_zero()) nonzero.push_back(&p);
  if (nonzero.empty()) throw Error(ErrorKind::AllZero, "gcd of all-zero polynomials");

  int common = nonzero.front()->valuation();
  for (const auto* p : nonzero) common = std::min(common, p->valuation());

  ExactPoly g = monic(nonzero.front()->shifted(-common));
  for (std::size_t i = 1; i < nonzero.size() && g.degree() > 0; ++i) {
    g = gcd2(g, nonzero[i]->shifted(-common));
  }
  return g.shifted(common);
}

ExactPoly derivative(const ExactPoly& p) {
  ExactPoly d;
  for (const auto& [e, v] : p.terms())
    if (e != 0) d.add_term(e - 1, v * e);
  return d;
}

std::vector<std::pair<ExactPoly, int>> squarefree_factors(const ExactPoly& p) {
  if (p.is_zero() || p.valuation() != 0) {
    throw Error(ErrorKind::InvalidArgument, "squarefree_factors needs a polynomial with nonzero constant term");
  }
  std::vector<std::pair<ExactPoly, int>> out;
  if (p.degree() == 0) return out;
  // Yun's algorithm.
  const ExactPoly dp = derivative(p);
  const ExactPoly a0 = poly_gcd({p, dp});
  ExactPoly b = exact_divide(p, a0);
  ExactPoly d = exact_divide(dp, a0) - derivative(b);
  for (int i = 1; b.degree() > 0; ++i) {
    const ExactPoly a = d.is_zero() ? monic(b) : poly_gcd({b, d});
    if (a.degree() > 0) out.emplace_back(a, i);
    const ExactPoly c = d.is_zero() ? ExactPoly{} : exact_divide(d, a);
    b = exact_divide(b, a);
    d = c - derivative(b);
  }
  return out;
}

std::string to_string(const ExactPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    const Rational mag = abs(c);
    if (e == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << var;
      if (e != 1) os << '^' << e;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactPoly& p) { return os << to_string(p); }

}  // namespace oversamp

#pragma once

#include "oversamp/error.hpp"
#include "oversamp/rational.hpp"

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace oversamp {

/// Sparse Laurent polynomial sum_k c_k z^k. Zero coefficients are never
/// stored, so the empty map is the zero polynomial. The coefficient type
/// fixes the domain: Rational is the exact domain, double / Complex the
/// float domain. Mixing domains does not compile.
template <class T>
class LaurentPoly {
 public:
  using Coeff = T;
  using Terms = std::map<int, T>;

  LaurentPoly() = default;

  static LaurentPoly monomial(const T& c, int exponent) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
  }
  static LaurentPoly constant(const T& c) { return monomial(c, 0); }
  static LaurentPoly one() { return constant(T(1)); }

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// Lowest exponent; the zero polynomial has none.
  int valuation() const {
    require_nonzero("valuation");
    return terms_.begin()->first;
  }
  int degree() const {
    require_nonzero("degree");
    return terms_.rbegin()->first;
  }

  T coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? T(0) : it->second;
  }
  const T& leading() const {
    require_nonzero("leading coefficient");
    return terms_.rbegin()->second;
  }

  bool is_monomial() const noexcept { return terms_.size() == 1; }

  void add_term(int exponent, const T& c) {
    if (oversamp::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (oversamp::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Multiplies by c * z^k.
  LaurentPoly mul_monomial(const T& c, int k) const {
    LaurentPoly out;
    if (oversamp::is_zero(c)) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, v * c);
    return out;
  }
  LaurentPoly shifted(int k) const { return mul_monomial(T(1), k); }
  LaurentPoly scaled(const T& c) const { return mul_monomial(c, 0); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, v);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, T(-v));
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const { return scaled(T(-1)); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, va] : a.terms_)
      for (const auto& [eb, vb] : b.terms_) out.add_term(ea + eb, T(va * vb));
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Value at a complex point (z != 0 when negative exponents are present).
  Complex eval(Complex z) const {
    Complex acc{};
    for (const auto& [e, v] : terms_) acc += to_complex(v) * std::pow(z, e);
    return acc;
  }

  /// Coefficient-wise conversion into another domain.
  template <class U>
  LaurentPoly<U> cast() const {
    LaurentPoly<U> out;
    for (const auto& [e, v] : terms_) out.add_term(e, convert<U>(v));
    return out;
  }

 private:
  static Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex to_complex(double x) { return {x, 0.0}; }
  static Complex to_complex(const Complex& x) { return x; }

  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw Error(ErrorKind::AllZero, std::string(what) + " of the zero polynomial");
  }

  Terms terms_;
};

using ExactPoly = LaurentPoly<Rational>;
using RealPoly = LaurentPoly<double>;
using ComplexPoly = LaurentPoly<Complex>;

/// Splits an algebraic polynomial into its n-harmonics: component j keeps the
/// monomials whose exponent is congruent to j modulo n.
template <class T>
std::vector<LaurentPoly<T>> harmonic_split(const LaurentPoly<T>& p, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "harmonic_split needs n >= 1");
  std::vector<LaurentPoly<T>> parts(static_cast<std::size_t>(n));
  for (const auto& [e, v] : p.terms()) {
    if (e < 0) {
      throw Error(ErrorKind::NegativeExponent,
                  "harmonic_split needs an algebraic polynomial; found exponent " + std::to_string(e));
    }
    parts[static_cast<std::size_t>(e % n)].add_term(e, v);
  }
  return parts;
}

// ---- exact-domain algorithms ------------------------------------------------

/// Quotient and remainder of algebraic polynomials (b nonzero).
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);

/// a / b in the Laurent ring; throws when b does not divide a.
ExactPoly exact_divide(const ExactPoly& a, const ExactPoly& b);

/// Monic gcd of the nonzero inputs times their common power of z. Zero
/// entries are ignored; all-zero input throws AllZero.
ExactPoly poly_gcd(const std::vector<ExactPoly>& ps);

/// Formal derivative.
ExactPoly derivative(const ExactPoly& p);

/// Squarefree decomposition of an algebraic polynomial with p(0) != 0:
/// monic pairwise coprime factors f_i with p = c prod f_i^{m_i}.
std::vector<std::pair<ExactPoly, int>> squarefree_factors(const ExactPoly& p);

/// True when p == c z^k with c != 0.
inline bool is_unit_monomial(const ExactPoly& p) { return p.is_monomial(); }

std::string to_string(const ExactPoly& p, char var = 'z');

std::ostream& operator<<(std::ostream& os, const ExactPoly& p);

}  // namespace oversamp

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace oversamp {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Canonical n/d; d must be nonzero.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p/q" or a plain decimal such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" text.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Uniform zero tests and conversions used by the coefficient-generic code.
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Complex& x) { return x == Complex{}; }

template <class To>
To convert(const Rational& q);

template <>
inline Rational convert<Rational>(const Rational& q) { return q; }
template <>
inline double convert<double>(const Rational& q) { return q.get_d(); }
template <>
inline Complex convert<Complex>(const Rational& q) { return {q.get_d(), 0.0}; }

/// Floor and ceiling of a rational as a machine integer.
long floor_to_long(const Rational& q);
long ceil_to_long(const Rational& q);

}  // namespace oversamp

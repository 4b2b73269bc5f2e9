#include "oversamp/rational.hpp"

#include "oversamp/error.hpp"

#include <cctype>

namespace oversamp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::DegenerateProblem: return "DegenerateProblem";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::DegreeBound: return "DegreeBound";
    case ErrorKind::NonMonomialHarmonic: return "NonMonomialHarmonic";
    case ErrorKind::MixedTrailingColumn: return "MixedTrailingColumn";
    case ErrorKind::RankDeficientScalarPart: return "RankDeficientScalarPart";
    case ErrorKind::NotAffine: return "NotAffine";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::NoPolynomialInverse: return "NoPolynomialInverse";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::NonRealFilters: return "NonRealFilters";
    case ErrorKind::CoverageGap: return "CoverageGap";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty())) {
      throw Error(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole(ip.empty() ? std::string("0") : std::string(ip));
    mpz_class fraction(fp.empty() ? std::string("0") : std::string(fp));
    value = Rational(whole * scale + fraction, scale);
  } else {
    if (!all_digits(s)) {
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    value = Rational(mpz_class{std::string(s)});
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

long floor_to_long(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out.get_si();
}

long ceil_to_long(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out.get_si();
}

}  // namespace oversamp

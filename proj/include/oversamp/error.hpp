#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oversamp {

enum class ErrorKind {
  InvalidArgument,
  NegativeExponent,
  AllZero,
  DegenerateProblem,
  InvalidProblem,
  DegreeBound,
  NonMonomialHarmonic,
  MixedTrailingColumn,
  RankDeficientScalarPart,
  NotAffine,
  RankAmbiguous,
  OracleTooLarge,
  WrongShape,
  NoPolynomialInverse,
  PreconditionFailed,
  DegreeCapExceeded,
  NonRealFilters,
  CoverageGap,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the toolkit. The kind is
/// stable and is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A rank decision whose singular values sit too close to the threshold.
class RankAmbiguousError : public Error {
 public:
  RankAmbiguousError(const std::string& what, std::vector<double> singular_values,
                     double threshold)
      : Error(ErrorKind::RankAmbiguous, what),
        singular_values_(std::move(singular_values)),
        threshold_(threshold) {}

  const std::vector<double>& singular_values() const noexcept {
    return singular_values_;
  }
  double threshold() const noexcept { return threshold_; }

 private:
  std::vector<double> singular_values_;
  double threshold_;
};

class CoverageGapError : public Error {
 public:
  CoverageGapError(const std::string& what, std::vector<long> missing)
      : Error(ErrorKind::CoverageGap, what), missing_(std::move(missing)) {}

  /// Flat sample indices m (sample point t = m*r/s) that were needed but absent.
  const std::vector<long>& missing() const noexcept { return missing_; }

 private:
  std::vector<long> missing_;
};

class DegreeCapExceededError : public Error {
 public:
  DegreeCapExceededError(const std::string& what, int nu_max)
      : Error(ErrorKind::DegreeCapExceeded, what), nu_max_(nu_max) {}

  int nu_max() const noexcept { return nu_max_; }

 private:
  int nu_max_;
};

}  // namespace oversamp

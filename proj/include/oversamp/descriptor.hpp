#pragma once

#include "oversamp/decision.hpp"
#include "oversamp/generators.hpp"
#include "oversamp/leftinv.hpp"
#include "oversamp/reconstruct.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace oversamp {

/// Settings carried by a problem descriptor next to the problem itself.
struct RunOptions {
  double tol = 1e-10;
  int grid_size = 256;
  int nu_max = 0;  ///< 0 means r N
  std::uint64_t seed = 0;
};

struct ProblemDescriptor {
  SamplingProblem problem;
  RunOptions options;
};

/// Parses and validates a descriptor (specVersion 1). Structural problems
/// throw InvalidArgument; mathematical ones (s <= r, N > r, ...) throw
/// InvalidProblem.
ProblemDescriptor parse_descriptor(const nlohmann::json& doc);
ProblemDescriptor load_descriptor(const std::string& path);

nlohmann::json to_json(const SamplingProblem& p);
nlohmann::json to_json(const KroneckerStructure& k);
nlohmann::json to_json(const FrameScan& f);
nlohmann::json to_json(const ExistenceReport& r);
nlohmann::json to_json(const LeftInverse& l);
nlohmann::json to_json(const VerifyReport& v);

/// Rows "channel,exponent,coefficient" with %.17g coefficients.
std::string filters_csv(const ReconstructionFilters& f);

}  // namespace oversamp

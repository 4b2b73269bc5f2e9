#include "oversamp/descriptor.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace oversamp {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
}

const json& field(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  bad(where, "expected a rational as a string such as \"-1/2\" or an integer");
}

int int_of(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<int>();
}

GeneratorSpec parse_generator(const json& g) {
  if (!g.is_object()) bad("generator", "expected an object");
  const std::string kind = field(g, "generator", "kind").get<std::string>();
  if (kind == "bspline") {
    only_keys(g, "generator", {"kind", "order"});
    return GeneratorSpec{BSpline{int_of(field(g, "generator", "order"), "generator.order")}};
  }
  if (kind == "piecewise") {
    only_keys(g, "generator", {"kind", "breakpoints", "pieces"});
    PiecewisePoly pw;
    const json& bps = field(g, "generator", "breakpoints");
    const json& pieces = field(g, "generator", "pieces");
    if (!bps.is_array() || !pieces.is_array()) bad("generator", "breakpoints and pieces must be arrays");
    for (const auto& b : bps) pw.breakpoints.push_back(rational_of(b, "generator.breakpoints"));
    for (const auto& piece : pieces) {
      if (!piece.is_array()) bad("generator.pieces", "each piece is an array of coefficients");
      std::vector<Rational> c;
      for (const auto& x : piece) c.push_back(rational_of(x, "generator.pieces"));
      pw.pieces.push_back(std::move(c));
    }
    return GeneratorSpec{std::move(pw)};
  }
  bad("generator.kind", "expected 'bspline' or 'piecewise', got '" + kind + "'");
}

SystemSpec parse_system(const json& sys) {
  if (!sys.is_object()) bad("system", "expected an object");
  const std::string kind = field(sys, "system", "kind").get<std::string>();
  if (kind == "identity") {
    only_keys(sys, "system", {"kind"});
    return SystemSpec{Identity{}};
  }
  if (kind == "shift") {
    only_keys(sys, "system", {"kind", "d"});
    return SystemSpec{Shift{rational_of(field(sys, "system", "d"), "system.d")}};
  }
  if (kind == "fir") {
    only_keys(sys, "system", {"kind", "taps"});
    FirCombination fir;
    const json& taps = field(sys, "system", "taps");
    if (!taps.is_array() || taps.empty()) bad("system.taps", "expected a nonempty array");
    for (const auto& t : taps) {
      if (!t.is_object()) bad("system.taps", "each tap is an object");
      only_keys(t, "system.taps", {"delay", "weight"});
      fir.taps.push_back(Tap{rational_of(field(t, "system.taps", "delay"), "system.taps.delay"),
                             rational_of(field(t, "system.taps", "weight"), "system.taps.weight")});
    }
    return SystemSpec{std::move(fir)};
  }
  bad("system.kind", "expected 'identity', 'shift' or 'fir', got '" + kind + "'");
}

json rational_json(const Rational& q) { return to_string(q); }

}  // namespace

ProblemDescriptor parse_descriptor(const json& doc) {
  if (!doc.is_object()) bad("descriptor", "expected a JSON object");
  only_keys(doc, "descriptor", {"specVersion", "generator", "system", "r", "s", "options"});
  if (int_of(field(doc, "descriptor", "specVersion"), "specVersion") != 1) bad("specVersion", "only version 1 is supported");
  ProblemDescriptor d;
  const int r = int_of(field(doc, "descriptor", "r"), "r");
  const int s = int_of(field(doc, "descriptor", "s"), "s");
  if (r < 1) bad("r", "must be a positive integer");
  if (s < 1) bad("s", "must be a positive integer");
  if (auto it = doc.find("options"); it != doc.end()) {
    const json& o = *it;
    if (!o.is_object()) bad("options", "expected an object");
    only_keys(o, "options", {"tol", "gridSize", "nuMax", "seed"});
    if (auto t = o.find("tol"); t != o.end()) {
      if (!t->is_number() || t->get<double>() <= 0.0) bad("options.tol", "expected a positive number");
      d.options.tol = t->get<double>();
    }
    if (auto g = o.find("gridSize"); g != o.end()) {
      d.options.grid_size = int_of(*g, "options.gridSize");
      if (d.options.grid_size < 16) bad("options.gridSize", "must be at least 16");
    }
    if (auto n = o.find("nuMax"); n != o.end()) {
      d.options.nu_max = int_of(*n, "options.nuMax");
      if (d.options.nu_max < 0) bad("options.nuMax", "must be nonnegative");
    }
    if (auto sd = o.find("seed"); sd != o.end()) {
      if (!sd->is_number_unsigned()) bad("options.seed", "expected a nonnegative integer");
      d.options.seed = sd->get<std::uint64_t>();
    }
  }
  d.problem = make_problem(parse_generator(field(doc, "descriptor", "generator")),
                           parse_system(field(doc, "descriptor", "system")), r, s);
  if (d.options.nu_max == 0) d.options.nu_max = d.problem.r * d.problem.N;
  return d;
}

ProblemDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read descriptor '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, "descriptor '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_descriptor(doc);
}

json to_json(const SamplingProblem& p) {
  json g = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BSpline>) {
          return {{"kind", "bspline"}, {"order", k.order}};
        } else {
          json pieces = json::array();
          for (const auto& piece : k.pieces) {
            json c = json::array();
            for (const auto& x : piece) c.push_back(rational_json(x));
            pieces.push_back(c);
          }
          json bps = json::array();
          for (const auto& b : k.breakpoints) bps.push_back(rational_json(b));
          return {{"kind", "piecewise"}, {"breakpoints", bps}, {"pieces", pieces}};
        }
      },
      p.generator.kind);
  json sys = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Identity>) {
          return {{"kind", "identity"}};
        } else if constexpr (std::is_same_v<K, Shift>) {
          return {{"kind", "shift"}, {"d", rational_json(k.d)}};
        } else {
          json taps = json::array();
          for (const auto& t : k.taps) taps.push_back({{"delay", rational_json(t.delay)}, {"weight", rational_json(t.weight)}});
          return {{"kind", "fir"}, {"taps", taps}};
        }
      },
      p.system.kind);
  return {{"generator", g}, {"system", sys}, {"r", p.r}, {"s", p.s}, {"N", p.N}};
}

json to_json(const KroneckerStructure& k) {
  json fin = json::array();
  for (const auto& e : k.finite_nonzero) {
    fin.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"blockSizes", e.block_sizes}});
  }
  return {{"rows", k.rows},
          {"cols", k.cols},
          {"rightMinimalIndices", k.right_minimal_indices},
          {"leftMinimalIndices", k.left_minimal_indices},
          {"zeroJordanBlocks", k.zero_jordan_blocks},
          {"infiniteBlocks", k.infinite_blocks},
          {"finiteNonzeroEigenvalues", fin},
          {"normalRank", k.normal_rank()}};
}

json to_json(const FrameScan& f) {
  return {{"alphaHat", f.alpha_hat}, {"betaHat", f.beta_hat}, {"minRank", f.min_rank}, {"gridSize", f.grid_size}};
}

json to_json(const ExistenceReport& r) {
  json j = {{"exists", r.exists},
            {"scalarRankOK", r.scalar_rank_ok},
            {"noRightSingular", r.no_right_singular},
            {"onlyZeroFiniteEigenvalue", r.only_zero_finite_eigenvalue}};
  j["kronecker"] = r.kronecker ? to_json(*r.kronecker) : json(nullptr);
  j["oracleAgrees"] = r.oracle_agrees ? json(*r.oracle_agrees) : json(nullptr);
  j["minorOracle"] = r.minor_oracle ? json(*r.minor_oracle) : json(nullptr);
  j["sufficientPatternHolds"] = r.sufficient_pattern_holds ? json(*r.sufficient_pattern_holds) : json(nullptr);
  j["frameScan"] = r.frame_scan ? to_json(*r.frame_scan) : json(nullptr);
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const LeftInverse& l) {
  json coeffs = json::array();
  for (const auto& c : l.coefficients) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < c.cols(); ++j) row.push_back(c(i, j));
      rows.push_back(row);
    }
    coeffs.push_back(rows);
  }
  json j = {{"nu", l.nu}, {"valuation", l.valuation}, {"s", l.s()}, {"r", l.r()}, {"coefficients", coeffs}, {"residualNorm", l.residual_norm}};
  if (l.exact) {
    json ex = json::array();
    for (const auto& c : *l.exact) {
      json rows = json::array();
      for (std::size_t i = 0; i < c.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < c.cols(); ++k) row.push_back(rational_json(c(i, k)));
        rows.push_back(row);
      }
      ex.push_back(rows);
    }
    j["exactCoefficients"] = ex;
  }
  return j;
}

json to_json(const VerifyReport& v) { return {{"maxError", v.max_error}, {"perTrial", v.per_trial}}; }

std::string filters_csv(const ReconstructionFilters& f) {
  std::ostringstream out;
  out << "channel,exponent,coefficient\n";
  char buf[64];
  for (int j = 1; j <= f.s; ++j) {
    for (const auto& [n, c] : f.per_channel[static_cast<std::size_t>(j - 1)]) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << j << ',' << n << ',' << buf << '\n';
    }
  }
  return out.str();
}

}  // namespace oversamp

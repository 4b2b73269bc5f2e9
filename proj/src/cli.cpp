#include "oversamp/cli.hpp"

#include "oversamp/descriptor.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace oversamp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

DesignOptions design_options(const RunOptions& o, bool scan) {
  DesignOptions d;
  d.decision.staircase.tol = o.tol;
  d.decision.grid_size = scan ? o.grid_size : 0;
  d.nu_max = o.nu_max;
  return d;
}

int cmd_analyze(const std::string& path, std::ostream& out) {
  const ProblemDescriptor d = load_descriptor(path);
  const ExistenceReport rep = existence_check(d.problem, design_options(d.options, true).decision);
  json j = to_json(rep);
  j["problem"] = to_json(d.problem);
  out << j.dump(2) << '\n';
  return rep.exists ? kExitOk : kExitNoInverse;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + p.string() + "'");
  f << content;
  if (!f.flush()) throw Error(ErrorKind::InvalidArgument, "cannot write '" + p.string() + "'");
}

int cmd_solve(const std::string& path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const ProblemDescriptor d = load_descriptor(path);
  const FilterDesign design = design_filters(d.problem, design_options(d.options, false));
  if (!design.report.exists) {
    err << "no compactly supported reconstruction filters exist for this problem\n";
    return kExitNoInverse;
  }
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::InvalidArgument, "cannot create output directory '" + out_dir + "'");
  const json inv = to_json(*design.inverse);
  write_file(dir / "leftinverse.json", inv.dump(2) + "\n");
  write_file(dir / "filters.csv", filters_csv(*design.filters));
  out << json{{"nu", design.inverse->nu},
              {"residualNorm", design.inverse->residual_norm},
              {"files", {"filters.csv", "leftinverse.json"}}}
             .dump(2)
      << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& path, int trials, std::ostream& out) {
  const ProblemDescriptor d = load_descriptor(path);
  const FilterDesign design = design_filters(d.problem, design_options(d.options, false));
  if (!design.report.exists) throw Error(ErrorKind::PreconditionFailed, "no reconstruction filters exist for this problem");
  const VerifyReport rep = verify_reconstruction(d.problem, *design.filters, trials, d.options.seed);
  json j = to_json(rep);
  j["trials"] = trials;
  j["seed"] = d.options.seed;
  j["passed"] = rep.max_error < 1e-8;
  out << j.dump(2) << '\n';
  return rep.max_error < 1e-8 ? kExitOk : kExitVerifyFailed;
}

int cmd_scan(const std::string& path, std::ostream& out) {
  const ProblemDescriptor d = load_descriptor(path);
  const FrameScan f = frame_scan(d.problem, d.options.grid_size, d.options.tol);
  out << to_json(f).dump(2) << '\n';
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::RankAmbiguous:
      return kExitRankAmbiguous;
    case ErrorKind::DegreeCapExceeded:
      return kExitDegreeCap;
    case ErrorKind::NoPolynomialInverse:
    case ErrorKind::RankDeficientScalarPart:
    case ErrorKind::PreconditionFailed:
      return kExitNoInverse;
    default:
      return kExitInputError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and verify compactly supported reconstruction filters for oversampled generalized sampling"};
  app.name("oversamp");
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  int trials = 50;

  auto* analyze = app.add_subcommand("analyze", "Decide existence and print the report");
  analyze->add_option("file", file, "Problem descriptor (JSON)")->required();
  auto* solve = app.add_subcommand("solve", "Compute the left inverse and write the filters");
  solve->add_option("file", file, "Problem descriptor (JSON)")->required();
  solve->add_option("--out", out_dir, "Output directory")->required();
  auto* verify = app.add_subcommand("verify", "Check perfect reconstruction on random functions");
  verify->add_option("file", file, "Problem descriptor (JSON)")->required();
  verify->add_option("--trials", trials, "Number of random trials")->check(CLI::NonNegativeNumber);
  auto* scan = app.add_subcommand("scan", "Frame bound and rank diagnostics over a frequency grid");
  scan->add_option("file", file, "Problem descriptor (JSON)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze) return cmd_analyze(file, out);
    if (*solve) return cmd_solve(file, out_dir, out, err);
    if (*verify) return cmd_verify(file, trials, out);
    if (*scan) return cmd_scan(file, out);
  } catch (const RankAmbiguousError& e) {
    err << "error: " << e.what() << " (threshold " << e.threshold() << ")\n";
    return kExitRankAmbiguous;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace oversamp

#include "oversamp/cli.hpp"
#include "oversamp/descriptor.hpp"
#include "oversamp/reconstruct.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using nlohmann::json;

namespace {

oversamp::ProblemDescriptor parse(const std::string& doc) { return oversamp::parse_descriptor(json::parse(doc)); }

oversamp::DesignOptions design_options(const oversamp::RunOptions& o) {
  oversamp::DesignOptions d;
  d.decision.staircase.tol = o.tol;
  d.nu_max = o.nu_max;
  return d;
}

std::string analyze(const std::string& doc, int grid_size) {
  const auto d = parse(doc);
  auto opts = design_options(d.options).decision;
  opts.grid_size = grid_size;
  json j = oversamp::to_json(oversamp::existence_check(d.problem, opts));
  j["problem"] = oversamp::to_json(d.problem);
  return j.dump();
}

py::dict solve(const std::string& doc) {
  const auto d = parse(doc);
  const auto design = oversamp::design_filters(d.problem, design_options(d.options));
  py::dict out;
  out["exists"] = design.report.exists;
  if (design.inverse) out["inverse"] = oversamp::to_json(*design.inverse).dump();
  if (design.filters) out["filters_csv"] = oversamp::filters_csv(*design.filters);
  return out;
}

std::string verify(const std::string& doc, int trials) {
  const auto d = parse(doc);
  return oversamp::to_json(oversamp::verify_reconstruction(d.problem, trials, d.options.seed, design_options(d.options)))
      .dump();
}

std::string scan(const std::string& doc) {
  const auto d = parse(doc);
  return oversamp::to_json(oversamp::frame_scan(d.problem, d.options.grid_size, d.options.tol)).dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = oversamp::run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_oversamp, m) {
  m.doc() = "Compactly supported reconstruction filters for oversampled generalized sampling";

  static const py::handle error = py::exception<oversamp::Error>(m, "OversampError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const oversamp::Error& e) {
      const std::string msg = std::string(oversamp::to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("analyze", &analyze, py::arg("descriptor"), py::arg("grid_size") = 0,
        "Existence report for a JSON descriptor, as a JSON string.");
  m.def("solve", &solve, py::arg("descriptor"));
  m.def("verify", &verify, py::arg("descriptor"), py::arg("trials") = 50);
  m.def("scan", &scan, py::arg("descriptor"));
  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command-line tool; returns (exit code, stdout, stderr).");
}

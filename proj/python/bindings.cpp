#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "facade/analysis.hpp"
#include "facade/config.hpp"
#include "facade/errors.hpp"
#include "facade/pipelines.hpp"
#include "facade/reference_solutions.hpp"

namespace py = pybind11;
using namespace facade;

namespace {

Scheme scheme_from(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw ConfigError("unknown scheme '" + name + "'");
  return *s;
}

ErrorKind kind_from(const std::string& name) {
  if (name == "l2") return ErrorKind::L2;
  if (name == "normalized") return ErrorKind::Normalized;
  if (name == "relative") return ErrorKind::Relative;
  throw ConfigError("unknown error kind '" + name + "'");
}

py::array_t<double> to_array(const Field2D& f) {
  // Rows are y, columns are x.
  py::array_t<double> out({f.ny(), f.nx()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < f.ny(); ++i)
    for (std::size_t j = 0; j < f.nx(); ++j) v(i, j) = f(j, i);
  return out;
}

py::dict validation_run(const std::string& scheme, double dt, std::size_t nx, std::size_t ny,
                        double final_time) {
  ValidationSettings vs;
  vs.nx = nx;
  vs.ny = ny;
  vs.final_time = final_time;
  const Field2D exact =
      AnalyticalSolution(ValidationCase{}, vs.n_terms).sample(uniform_grid(nx, ny), final_time);
  const auto row = run_validation_scheme(scheme_from(scheme), dt, vs, exact);
  py::dict d;
  d["eps2"] = row.eps2;
  d["seconds"] = row.seconds;
  d["diverged"] = row.diverged;
  d["diverged_step"] = row.diverged_step;
  return d;
}

py::dict simulate_config(const std::filesystem::path& path) {
  const RunConfig config = load_config(path);
  config.validate();
  const auto report = run_facade(config, load_run_environment(config));
  py::dict d;
  d["time"] = report.flux.time;
  d["flux"] = report.flux.flux;
  std::vector<std::string> months;
  std::vector<double> energy;
  for (const auto& l : report.loads) {
    months.push_back(l.month);
    energy.push_back(l.energy);
  }
  d["months"] = months;
  d["loads_MJ"] = energy;
  d["probe_names"] = report.probe_names;
  d["probe_time"] = report.probe_time;
  d["probe_values"] = report.probe_values;
  d["final_field"] = to_array(report.final_field);
  d["steps"] = report.steps;
  d["mean_coefficient"] = report.mean_coefficient;
  return d;
}

}  // namespace

PYBIND11_MODULE(_facade2d, m) {
  m.doc() = "Two-dimensional transient heat transfer through building facades";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("find_eigenvalues", &find_eigenvalues, py::arg("bi_left"), py::arg("bi_right"),
        py::arg("count"), "Positive roots of the Robin-Robin eigenvalue problem on [0, 1].");
  m.def(
      "analytical_solution",
      [](double x, double y, double t, std::size_t terms) {
        return analytical_solution(x, y, t, ValidationCase{}, terms);
      },
      py::arg("x"), py::arg("y"), py::arg("t"), py::arg("terms") = 50,
      "Series solution of the validation problem at one point.");
  m.def(
      "surface_coefficient",
      [](double y, double wind) { return surface_coefficient(ConvectionModel{}, y, wind); },
      py::arg("y"), py::arg("wind"), "Exterior coefficient h(y, v) with the default law, W/(m2 K).");
  m.def(
      "error_metric",
      [](const std::string& kind, const std::vector<double>& value,
         const std::vector<double>& reference) {
        const std::vector<double> w(value.size(), 1.0);
        if (reference.size() != value.size()) throw ConfigError("length mismatch");
        return error_metric(kind_from(kind), value, reference, w);
      },
      py::arg("kind"), py::arg("value"), py::arg("reference"),
      "Unweighted RMS error of kind 'l2', 'normalized' or 'relative'.");
  m.def("validation_run", &validation_run, py::arg("scheme"), py::arg("dt"), py::arg("nx") = 101,
        py::arg("ny") = 101, py::arg("final_time") = 0.04,
        "One scheme on the validation problem; returns eps2 and timing.");
  m.def("simulate", &simulate_config, py::arg("config"),
        "Runs the facade simulation described by an INI file.");
}

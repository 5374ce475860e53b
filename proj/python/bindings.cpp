#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qpavg/driver.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/fourier.hpp"
#include "qpavg/io.hpp"
#include "qpavg/lyapunov.hpp"
#include "qpavg/pipelines.hpp"
#include "qpavg/rotation.hpp"

namespace py = pybind11;
using namespace qpavg;

namespace {

py::dict to_dict(const RunConfig& cfg, const ResultTable& t) {
  py::dict d;
  d["config"] = cfg.to_json();
  d["columns"] = t.columns;
  d["rows"] = t.rows;
  py::dict s;
  for (const auto& [k, v] : t.scalars) s[py::str(k)] = v;
  d["scalars"] = s;
  return d;
}

WeightSequence<double> weights_for(const std::string& kernel, std::size_t N) {
  return normalized_weights<double>(parse_kernel(kernel), N);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted Birkhoff averages for quasiperiodic orbits";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("version", &version);
  m.def("commands", &command_names);

  m.def(
      "run_json",
      [](const std::string& config_json) {
        const RunConfig cfg = resolve_defaults(RunConfig::from_json(config_json));
        return to_dict(cfg, run_command(cfg));
      },
      py::arg("config_json"), "Run one command from a JSON run config; returns columns, rows (strings) and scalars.");

  m.def(
      "weights",
      [](const std::string& kernel, std::size_t N) { return weights_for(kernel, N).weights; },
      py::arg("kernel"), py::arg("N"), "Normalized weights for n = 0..N-1.");

  m.def(
      "weighted_average",
      [](const std::vector<double>& values, const std::string& kernel) {
        return weighted_average(OrbitSample<double>::scalar(values), weights_for(kernel, values.size())).value[0];
      },
      py::arg("values"), py::arg("kernel") = "exp");

  m.def(
      "rotation_number",
      [](const std::vector<double>& lifted, const std::string& kernel) {
        if (lifted.size() < 2) throw ConfigError("rotation_number: need at least two lifted angles");
        return rotation_vector(OrbitSample<double>::scalar(lifted), weights_for(kernel, lifted.size() - 1)).rho[0];
      },
      py::arg("lifted"), py::arg("kernel") = "exp", "Rotation number in [0,1) from N+1 lifted angles.");

  m.def(
      "circle_rotation",
      [](const std::vector<std::array<double, 2>>& points, const std::string& kernel) {
        return circle_rotation<double>(points, parse_kernel(kernel)).estimate.rho[0];
      },
      py::arg("points"), py::arg("kernel") = "exp", "Rotation number of N+1 points on an invariant circle.");

  m.def(
      "fourier_coeffs",
      [](const std::vector<double>& values, double rho, int kmax, const std::string& kernel) {
        const auto sp = fourier_coeffs_1d(values, rho, kmax, weights_for(kernel, values.size()));
        return py::make_tuple(sp.b, sp.c);
      },
      py::arg("values"), py::arg("rho"), py::arg("kmax"), py::arg("kernel") = "exp",
      "Cosine and sine coefficients (b, c) of samples taken along theta_n = n rho.");

  m.def(
      "standard_map_step", [](double x, double y) { return standard_map_step<double>({x, y}); }, py::arg("x"),
      py::arg("y"));
  m.def(
      "torus_step", [](double x, double y) {
        return torus2d_step<double>({x, y}, TorusMapCoefficients<double>::defaults());
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "lyapunov",
      [](const std::string& system, std::array<double, 2> s0, std::size_t N, const std::string& kernel) {
        const Kernel k = parse_kernel(kernel);
        switch (parse_system(system)) {
          case SystemKind::standard_map:
            return lyapunov_exponents<double>(StandardMap<double>{}, s0, N, k).exponents;
          case SystemKind::torus2d_map:
            return lyapunov_exponents<double>(TorusMap<double>{}, s0, N, k).exponents;
          default:
            throw ConfigError("lyapunov: supported for the standard and torus2d maps");
        }
      },
      py::arg("system"), py::arg("state"), py::arg("N"), py::arg("kernel") = "exp");
}

// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fso_irs_lab/errors.hpp"
#include "fso_irs_lab/experiments.hpp"
#include "fso_irs_lab/wave_optics_oracle.hpp"

namespace py = pybind11;
using namespace fsoirs;

namespace {

IrsConfig make_irs(double L, const std::string& design, double f) {
  IrsConfig irs;
  if (design == "mirror" || design == "mir") {
    irs.technology = Technology::mirror;
  } else {
    irs.profile = parse_profile(design);
  }
  irs.Lx = irs.Ly = L;
  irs.f = f;
  irs.validate();
  return irs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = FSO_IRS_LAB_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def(
      "link_at_x",
      [](double x, double Ltr, double d3) {
        const auto g = link_at_x(Ellipse{Ltr, d3}, x);
        py::dict out;
        out["d1"] = g.d1;
        out["d2"] = g.d2;
        out["x"] = g.x_o;
        out["z"] = g.z_o;
        out["theta_i"] = g.theta_i;
        out["theta_r"] = g.theta_r;
        out["theta_mir"] = g.theta_mir;
        return out;
      },
      py::arg("x"), py::arg("Ltr") = 800.0, py::arg("d3") = 1000.0);

  m.def(
      "gml",
      [](double L, const std::string& design, double x, double f, double a, double w0, double lambda, double Ltr,
         double d3) {
        const auto irs = make_irs(L, design, f);
        const auto ev = gml_piecewise(link_at_x(Ellipse{Ltr, d3}, x), BeamParams{lambda, w0}, irs, LensConfig{a});
        py::dict out;
        out["value"] = ev.value;
        out["raw"] = ev.raw;
        out["regime"] = to_string(ev.regime);
        out["formula"] = ev.formula;
        out["warnings"] = ev.warnings;
        return out;
      },
      py::arg("L"), py::arg("design") = "LP", py::arg("x") = 200.0, py::arg("f") = 250.0, py::arg("a") = 0.1,
      py::arg("w0") = 2.5e-3, py::arg("lam") = 1550e-9, py::arg("Ltr") = 800.0, py::arg("d3") = 1000.0);

  m.def(
      "oracle_gml",
      [](double L, const std::string& design, double x, double f, double a, double w0, double lambda, double Ltr,
         double d3) {
        const auto irs = make_irs(L, design, f);
        const auto setup = make_setup(link_at_x(Ellipse{Ltr, d3}, x), BeamParams{lambda, w0}, irs);
        py::gil_scoped_release release;
        return numerical_gml(setup, LensConfig{a});
      },
      py::arg("L"), py::arg("design") = "LP", py::arg("x") = 200.0, py::arg("f") = 250.0, py::arg("a") = 0.1,
      py::arg("w0") = 2.5e-3, py::arg("lam") = 1550e-9, py::arg("Ltr") = 800.0, py::arg("d3") = 1000.0);

  m.def(
      "relay_gml", [](double d, double a, double w0, double lambda) {
        return relay_gml(d, BeamParams{lambda, w0}, LensConfig{a});
      },
      py::arg("d"), py::arg("a") = 0.1, py::arg("w0") = 2.5e-3, py::arg("lam") = 1550e-9);

  m.def(
      "gg_params",
      [](double d, double Cn2, double w0, double lambda) {
        const auto p = gg_params_for_distance(d, BeamParams{lambda, w0}, Cn2);
        return std::pair{p.alpha, p.beta};
      },
      py::arg("d"), py::arg("Cn2") = 50e-15, py::arg("w0") = 2.5e-3, py::arg("lam") = 1550e-9);

  m.def(
      "gamma_gamma_cdf", [](double x, double alpha, double beta) { return gamma_gamma_cdf(x, {alpha, beta}); },
      py::arg("x"), py::arg("alpha"), py::arg("beta"));
  m.def("erf", [](cplx z) { return erf_complex(z); }, py::arg("z"));
  m.def("owen_t", [](cplx a, cplx h) { return owen_t(a, h); }, py::arg("a"), py::arg("h"));

  m.def("builtin_names", &builtin_names);
  m.def(
      "run_scenario",
      [](const std::string& text, const std::filesystem::path& out, int jobs) {
        const auto s = parse_scenario(text, "<python>");
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(s, {jobs, out});
        }
        return std::pair{r.directory, r.files};
      },
      py::arg("text"), py::arg("out"), py::arg("jobs") = 1);
}

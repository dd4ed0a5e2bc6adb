#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relasym/joukowski.hpp"
#include "relasym/modified.hpp"
#include "relasym/pade.hpp"
#include "relasym/sobolev.hpp"
#include "relasym/verify.hpp"
#include "relasym/zeros.hpp"

namespace py = pybind11;
using namespace relasym;

namespace {

// Python objects travel through JSON so the bindings share the CLI schema.
json to_cpp_json(const py::object& o) {
  auto dumps = py::module_::import("json").attr("dumps");
  return json::parse(dumps(o).cast<std::string>());
}

py::object to_py(const json& j) {
  auto loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

BaseMeasureSpec measure_arg(const py::object& m) {
  if (m.is_none()) return {};
  return measure_from_json(to_cpp_json(m));
}

}  // namespace

PYBIND11_MODULE(relasym, m) {
  m.doc() = "Relative asymptotics of orthogonal, Sobolev and Pade polynomials";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("phi", &phi, py::arg("z"));
  m.def("cheb_transform", &cheb_transform, py::arg("nu"), py::arg("z"));

  m.def(
      "recurrence",
      [](const py::object& measure, int nmax) { return to_py(to_json(recurrence_for(measure_arg(measure), nmax))); },
      py::arg("measure") = py::none(), py::arg("nmax") = 100,
      "Recurrence table as a dict with keys measure, nmax, a, b, tau.");

  m.def(
      "limit_modified",
      [](cplx z, const py::object& modifier) { return limit_modified(z, modifier_from_json(to_cpp_json(modifier))); },
      py::arg("z"), py::arg("modifier"));

  m.def(
      "limit_sobolev",
      [](cplx z, const py::object& spec) { return limit_sobolev(z, attraction_factors(sobolev_from_json(to_cpp_json(spec)))); },
      py::arg("z"), py::arg("sobolev"));

  m.def(
      "sobolev_roots",
      [](int n, const py::object& spec, const py::object& measure) {
        auto t = recurrence_for(measure_arg(measure), n + 8);
        return roots(sn_bordered(n, sobolev_from_json(to_cpp_json(spec)), t).rep, t);
      },
      py::arg("n"), py::arg("sobolev"), py::arg("measure") = py::none(), "Zeros of the monic Sobolev polynomial S_n.");

  m.def(
      "modified_roots",
      [](int n, const py::object& modifier, const py::object& measure) {
        auto r = modifier_from_json(to_cpp_json(modifier));
        auto t = recurrence_for(measure_arg(measure), n + r.A() + 8);
        return roots(solve_Q(n, r, t).q, t);
      },
      py::arg("n"), py::arg("modifier"), py::arg("measure") = py::none());

  m.def(
      "pade_error_ratio",
      [](int n, cplx z, const py::object& fn) {
        auto f = stieltjes_from_json(to_cpp_json(fn));
        auto t = recurrence_for(f.base, n + 4 * (f.to_sobolev().A() + 1) + 16);
        auto r = error_ratio(n, z, f, t);
        return py::make_tuple(r.ratio, r.saturated);
      },
      py::arg("n"), py::arg("z"), py::arg("function"), "(e_{n+1}/e_n, saturated) for the Pade error at z.");

  m.def("scenarios", &bundled_scenario_names);

  m.def(
      "verify",
      [](const py::object& config) {
        ExperimentConfig cfg = py::isinstance<py::str>(config) ? bundled_scenario(config.cast<std::string>())
                                                               : config_from_json(to_cpp_json(config));
        VerifyReport r;
        {
          py::gil_scoped_release release;
          r = run_verify(cfg);
        }
        return to_py(to_json(r));
      },
      py::arg("config"), "Run a bundled scenario (by name) or a config dict; returns the summary report.");
}

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imexcouple/cases.hpp"
#include "imexcouple/config.hpp"
#include "imexcouple/diagnostics.hpp"
#include "imexcouple/error.hpp"
#include "imexcouple/numflux.hpp"
#include "imexcouple/output.hpp"
#include "imexcouple/study.hpp"
#include "imexcouple/tableau.hpp"

namespace py = pybind11;
using namespace imexcouple;

namespace {

// (nz, nx, 4) copy of the conserved values
py::array_t<double> to_array(const ConservedField& q) {
  const auto& g = q.grid();
  py::array_t<double> a({g.nz, g.nx, 4});
  auto m = a.mutable_unchecked<3>();
  for (int j = 1; j <= g.nz; ++j)
    for (int i = 1; i <= g.nx; ++i) {
      const Vec4 v = q(i, j);
      for (int c = 0; c < 4; ++c) m(j - 1, i - 1, c) = v[c];
    }
  return a;
}

py::dict state_dict(const CoupledState& s) {
  py::dict d;
  d["time"] = s.time;
  d["q1"] = to_array(s.q1);
  d["q2"] = s.q2 ? py::object(to_array(*s.q2)) : py::none();
  return d;
}

Vec4 vec4(const std::vector<double>& v) {
  if (v.size() != 4) throw std::invalid_argument("expected 4 values");
  return {v[0], v[1], v[2], v[3]};
}

py::list rows_list(const std::vector<ConvergenceRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["size"] = r.size;
    d["rho"] = r.error.rho;
    d["momentum"] = r.error.momentum;
    d["energy"] = r.error.energy;
    d["order_rho"] = r.order_rho;
    d["order_momentum"] = r.order_momentum;
    d["order_energy"] = r.order_energy;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_imexcouple, m) {
  m.doc() = "IMEX coupled finite-volume Navier-Stokes solver";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<TableauError>(m, "TableauError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<GridError>(m, "GridError", PyExc_ValueError);

  py::class_<GridSizes>(m, "GridSizes")
      .def(py::init<>())
      .def(py::init([](int nx, int nz1, int nz2) { return GridSizes{nx, nz1, nz2}; }), py::arg("nx"),
           py::arg("nz1"), py::arg("nz2") = 0)
      .def_readwrite("nx", &GridSizes::nx)
      .def_readwrite("nz1", &GridSizes::nz1)
      .def_readwrite("nz2", &GridSizes::nz2)
      .def("__eq__", [](const GridSizes& a, const GridSizes& b) { return a == b; })
      .def("__repr__", [](const GridSizes& g) {
        return "GridSizes(" + std::to_string(g.nx) + ", " + std::to_string(g.nz1) + ", " +
               std::to_string(g.nz2) + ")";
      });

  py::class_<RunConfig>(m, "RunConfig")
      .def_property_readonly("case", [](const RunConfig& c) { return c.case_spec.name; })
      .def_property(
          "case_params", [](const RunConfig& c) { return c.case_spec.params; },
          [](RunConfig& c, const std::map<std::string, double>& p) { c.case_spec.params = p; })
      .def_readwrite("grid", &RunConfig::grid)
      .def_readwrite("t_end", &RunConfig::t_end)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("diagnostics_every", &RunConfig::diagnostics_every)
      .def_readwrite("snapshot_every", &RunConfig::snapshot_every)
      .def_property(
          "dt", [](const RunConfig& c) { return c.coupling.dt; },
          [](RunConfig& c, double v) { c.coupling.dt = v; })
      .def_property(
          "scheme", [](const RunConfig& c) { return c.coupling.scheme; },
          [](RunConfig& c, const std::string& v) { c.coupling.scheme = v; })
      .def_property(
          "substeps", [](const RunConfig& c) { return c.coupling.substeps; },
          [](RunConfig& c, int v) { c.coupling.substeps = v; })
      .def_property(
          "mode", [](const RunConfig& c) { return std::string(to_string(c.coupling.mode)); },
          [](RunConfig& c, const std::string& v) { c.coupling.mode = parse_mode(v); })
      .def_property(
          "operator", [](const RunConfig& c) { return std::string(to_string(c.coupling.op)); },
          [](RunConfig& c, const std::string& v) { c.coupling.op = parse_operator(v); })
      .def_property_readonly("label", [](const RunConfig& c) { return c.coupling.label(); })
      .def("echo", &echo_config)
      .def("__eq__", [](const RunConfig& a, const RunConfig& b) { return a == b; });

  m.def("default_config", &default_run_config, py::arg("case"));
  m.def("parse_config_text", &parse_config_text, py::arg("text"),
        py::arg("overrides") = std::vector<std::string>{});
  m.def("parse_config", &parse_config, py::arg("path"), py::arg("overrides") = std::vector<std::string>{});
  m.def("case_names", &case_names);

  m.def(
      "run",
      [](const RunConfig& c) {
        CaseRun r = [&] {
          py::gil_scoped_release release;
          return run_case(c);
        }();
        py::dict d = state_dict(r.result.final_state);
        d["steps"] = r.result.steps;
        d["initial"] = state_dict(r.initial);
        py::list diag;
        for (const auto& row : r.result.diagnostics) {
          py::dict x;
          x["step"] = row.step;
          x["time"] = row.time;
          x["mass1"] = row.mass1;
          x["mass2"] = row.mass2;
          x["mass_loss"] = row.mass_loss;
          x["energy_loss"] = row.energy_loss;
          x["cr1"] = row.courant1;
          x["cr2"] = row.courant2;
          diag.append(x);
        }
        d["diagnostics"] = diag;
        d["diagnostics_csv"] = diagnostics_csv(r.result.diagnostics);
        d["field_csv"] = field_csv(r.result.final_state.q1);
        return d;
      },
      py::arg("config"), "Runs a configuration and returns the final state and diagnostics.");

  m.def(
      "convergence",
      [](const RunConfig& c, int levels, const std::string& axis, int reference_factor, double reference_dt,
         const std::string& reference_scheme) {
        StudyOptions o;
        o.reference_factor = reference_factor;
        o.reference_dt = reference_dt;
        o.reference_scheme = reference_scheme;
        StudyAxis ax;
        if (axis == "space") ax = StudyAxis::Space;
        else if (axis == "time") ax = StudyAxis::Time;
        else throw std::invalid_argument("axis must be 'space' or 'time'");
        StudyResult r = [&] {
          py::gil_scoped_release release;
          return convergence_study(c, levels, ax, o);
        }();
        py::dict d;
        d["size_label"] = r.size_label;
        d["rows"] = rows_list(r.rows);
        d["seconds"] = r.seconds;
        d["csv"] = convergence_csv(r.rows, r.size_label);
        return d;
      },
      py::arg("config"), py::arg("levels"), py::arg("axis"), py::arg("reference_factor") = 4,
      py::arg("reference_dt") = 0.0, py::arg("reference_scheme") = "rk4");

  m.def(
      "observed_order",
      [](const std::vector<double>& e, double ratio) { return observed_order(e, ratio); },
      py::arg("errors"), py::arg("ratio") = 2.0);

  m.def(
      "roe_flux",
      [](const std::vector<double>& ql, const std::vector<double>& qr, double nx, double nz, double gamma) {
        const Vec4 f = roe_flux(vec4(ql), vec4(qr), nx, nz, gamma);
        return std::vector<double>(f.begin(), f.end());
      },
      py::arg("q_left"), py::arg("q_right"), py::arg("nx"), py::arg("nz"), py::arg("gamma") = 1.4);
  m.def(
      "euler_flux",
      [](const std::vector<double>& q, double nx, double nz, double gamma) {
        const Vec4 f = euler_flux(vec4(q), nx, nz, gamma);
        return std::vector<double>(f.begin(), f.end());
      },
      py::arg("q"), py::arg("nx"), py::arg("nz"), py::arg("gamma") = 1.4);

  m.def("tableau_names", &tableau_names);
  m.def(
      "tableau",
      [](const std::string& name) {
        const IMEXTableau& t = tableau(name);
        py::dict d;
        d["name"] = t.name;
        d["stages"] = t.stages;
        d["order"] = t.order;
        d["a"] = t.a;
        d["a_tilde"] = t.a_tilde;
        d["b"] = t.b;
        d["b_tilde"] = t.b_tilde;
        d["c"] = t.c;
        d["c_tilde"] = t.c_tilde;
        return d;
      },
      py::arg("name"));
  m.def(
      "validate_tableau",
      [](const std::string& name) {
        std::vector<std::tuple<std::string, double, bool>> out;
        for (const auto& c : validate_tableau(tableau(name))) out.emplace_back(c.condition, c.residual, c.ok);
        return out;
      },
      py::arg("name"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mhd/config.hpp"
#include "mhd/diagnostics.hpp"
#include "mhd/errors.hpp"
#include "mhd/experiments.hpp"
#include "mhd/mms.hpp"
#include "mhd/problems.hpp"

namespace py = pybind11;
using namespace mhd;

namespace {

py::dict csr(const SparseMatrix& a) {
  py::dict d;
  d["shape"] = py::make_tuple(a.rows(), a.cols());
  d["indptr"] = std::vector<std::size_t>(a.row_ptr().begin(), a.row_ptr().end());
  d["indices"] = std::vector<std::size_t>(a.col_idx().begin(), a.col_idx().end());
  d["data"] = std::vector<double>(a.values().begin(), a.values().end());
  return d;
}

}  // namespace

PYBIND11_MODULE(_mhd, m) {
  m.doc() = "Structure-preserving finite element solver for incompressible MHD";

  py::register_exception<SolverFailure>(m, "SolverFailure");
  py::register_exception<StepFailure>(m, "StepFailure");
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<SpaceKind>(m, "SpaceKind")
      .value("Grad", SpaceKind::Grad)
      .value("Curl", SpaceKind::Curl)
      .value("Div", SpaceKind::Div)
      .value("L2", SpaceKind::L2);
  py::enum_<Scheme>(m, "Scheme").value("Main", Scheme::Main).value("Reference", Scheme::Reference);

  py::class_<FieldVector>(m, "FieldVector")
      .def(py::init<>())
      .def(py::init([](SpaceKind k, std::vector<double> v) { return FieldVector{k, std::move(v)}; }))
      .def_readwrite("space", &FieldVector::space)
      .def_readwrite("values", &FieldVector::values);

  py::class_<DeRhamComplex>(m, "DeRhamComplex")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def("num_dofs", [](const DeRhamComplex& c, SpaceKind k) { return c.space(k).num_dofs(); })
      .def("num_free", [](const DeRhamComplex& c, SpaceKind k) { return c.space(k).num_free(); })
      .def("grad", [](const DeRhamComplex& c) { return csr(c.grad()); })
      .def("curl", [](const DeRhamComplex& c) { return csr(c.curl()); })
      .def("div", [](const DeRhamComplex& c) { return csr(c.div()); })
      .def("mass", [](const DeRhamComplex& c, SpaceKind k) { return csr(c.mass(k)); })
      .def("inner", [](const DeRhamComplex& c, SpaceKind k, const std::vector<double>& a,
                       const std::vector<double>& b) { return c.inner(k, a, b); });

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("n", &SimParams::n)
      .def_readwrite("dt", &SimParams::dt)
      .def_readwrite("t_end", &SimParams::t_end)
      .def_readwrite("re_inv", &SimParams::re_inv)
      .def_readwrite("rm_inv", &SimParams::rm_inv)
      .def_readwrite("coupling", &SimParams::coupling)
      .def_readwrite("picard_tol", &SimParams::picard_tol)
      .def_readwrite("picard_max", &SimParams::picard_max)
      .def_readwrite("krylov_tol", &SimParams::krylov_tol)
      .def_readwrite("scheme", &SimParams::scheme);

  py::class_<MhdState>(m, "MhdState")
      .def_readonly("u", &MhdState::u)
      .def_readonly("B", &MhdState::B)
      .def_readonly("P", &MhdState::P)
      .def_readonly("j", &MhdState::j)
      .def_readonly("t", &MhdState::t)
      .def_readonly("step", &MhdState::step);

  py::class_<PicardReport>(m, "PicardReport")
      .def_readonly("iterations", &PicardReport::iterations)
      .def_readonly("inner_iterations", &PicardReport::inner_iterations)
      .def_readonly("converged", &PicardReport::converged)
      .def_readonly("differences", &PicardReport::differences);

  // The integrator keeps a reference to the complex.
  py::class_<Integrator>(m, "Integrator")
      .def(py::init<const DeRhamComplex&, SimParams>(), py::arg("complex"), py::arg("params"), py::keep_alive<1, 2>())
      .def("initial_state", &Integrator::initial_state)
      .def("vortex_initial_state", [](const Integrator& i) { return vortex_initial_state(i); })
      .def("step", [](const Integrator& i, const MhdState& s) {
        PicardReport rep;
        auto out = i.step(s, &rep);
        return py::make_tuple(out, rep);
      });

  m.def("energy", &energy, py::arg("complex"), py::arg("state"), py::arg("coupling") = 1.0);
  m.def("magnetic_helicity", [](const DeRhamComplex& c, const FieldVector& b) { return state_magnetic_helicity(c, b); });
  m.def("cross_helicity", &cross_helicity);
  m.def("div_max_raw", &div_max_raw);
  m.def("weak_div_max", &weak_div_max);

  py::class_<mms::SourceCheck>(m, "SourceCheck")
      .def_readonly("momentum_error", &mms::SourceCheck::momentum_error)
      .def_readonly("induction_error", &mms::SourceCheck::induction_error)
      .def_readonly("passed", &mms::SourceCheck::passed);
  m.def(
      "validate_sources",
      [](double re_inv, double rm_inv, double coupling) {
        return mms::validate_sources(mms::Coefficients{re_inv, rm_inv, coupling});
      },
      py::arg("re_inv") = 1e-4, py::arg("rm_inv") = 1e-4, py::arg("coupling") = 1.0);
  m.def(
      "run_convergence",
      [](const std::vector<std::size_t>& meshes, double dt, double t_end, double re_inv, double rm_inv) {
        py::list rows;
        for (const auto& r : mms::run_convergence(meshes, dt, t_end, {re_inv, rm_inv, 1.0})) {
          py::dict d;
          d["h"] = r.h;
          d["err_b"] = r.err_b;
          d["order_b"] = r.order_b;
          d["err_u"] = r.err_u;
          d["order_u"] = r.order_u;
          d["err_p"] = r.err_p;
          d["order_p"] = r.order_p;
          rows.append(d);
        }
        return rows;
      },
      py::arg("meshes"), py::arg("dt"), py::arg("t_end"), py::arg("re_inv") = 1e-4, py::arg("rm_inv") = 1e-4);

  m.def(
      "run_experiment",
      [](const std::string& experiment, const std::string& config_text) {
        RunConfig cfg;
        cfg.experiment = experiment_from_string(experiment);
        apply_config_text(cfg, config_text);
        validate(cfg);
        std::ostringstream log;
        const int status = run_experiment(cfg, log);
        return py::make_tuple(status, log.str());
      },
      py::arg("experiment"), py::arg("config_text"));
}

#include "khessian/error.hpp"
#include "khessian/identities.hpp"
#include "khessian/monotone.hpp"
#include "khessian/problem.hpp"
#include "khessian/radial.hpp"
#include "khessian/solver.hpp"
#include "khessian/surfaces.hpp"
#include "khessian/symfunc.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace khessian;

namespace {

ProblemSpec make_spec(int n, int k, py::object a, double C3, double C4) {
  const double av = a.is_none() ? n - k - 1.0 : a.cast<double>();
  return ProblemSpec::make(n, k, av, C3, C4);
}

py::dict ledger_dict(const identities::LedgerEntry& e) {
  py::dict d;
  d["name"] = e.name;
  d["lhs"] = e.lhs;
  d["rhs"] = e.rhs;
  d["gap"] = e.gap;
  d["verdict"] = std::string(identities::to_string(e.verdict));
  d["tolerance"] = e.tolerance;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-Hessian exterior problems: solver, level-set monotonicity and identities";

  py::register_exception<Error>(m, "KHessianError");

  m.def("sigma", [](const std::vector<double>& v, int k) { return symfunc::sigma(std::span<const double>(v), k); },
        py::arg("values"), py::arg("k"));
  m.def("sigma_all", [](const std::vector<double>& v) { return symfunc::sigma_all(std::span<const double>(v)); });
  m.def("newton_maclaurin_gap",
        [](const std::vector<double>& v, int mm, int l) { return symfunc::newton_maclaurin_gap(symfunc::SymVec(v), mm, l); },
        py::arg("values"), py::arg("m"), py::arg("l"));
  m.def("property_suite", [](std::uint64_t seed, int samples) {
    const auto r = symfunc::property_suite(seed, samples);
    py::dict d;
    d["samples"] = r.samples;
    d["max_recursion"] = r.max_recursion;
    d["max_reilly"] = r.max_reilly;
    d["max_trace"] = r.max_trace;
    d["max_grad_error"] = r.max_grad_error;
    d["min_nm_gap"] = r.min_nm_gap;
    d["ok"] = r.identities_ok() && r.gradient_ok() && r.newton_maclaurin_ok();
    return d;
  }, py::arg("seed"), py::arg("samples"));

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init(&make_spec), py::arg("n"), py::arg("k"), py::arg("a") = py::none(),
           py::arg("C3") = 1.0, py::arg("C4") = 0.0)
      .def_readonly("n", &ProblemSpec::n)
      .def_readonly("k", &ProblemSpec::k)
      .def_readonly("a", &ProblemSpec::a)
      .def_readonly("C3", &ProblemSpec::C3)
      .def_readonly("C4", &ProblemSpec::C4)
      .def_readwrite("eps_schedule", &ProblemSpec::eps_schedule)
      .def_readwrite("t_grid", &ProblemSpec::t_grid)
      .def("weights", [](const ProblemSpec& s, double t) {
        const auto w = weights(t, s);
        return py::make_tuple(w.C1, w.C2);
      })
      .def("limit", [](const ProblemSpec& s, double rho) { return limit_bound(s, rho); });
  m.def("min_exponent", &min_exponent);

  py::class_<radial::RadialSolution>(m, "RadialSolution")
      .def(py::init<int, int, double>(), py::arg("n"), py::arg("k"), py::arg("R") = 1.0)
      .def("u", &radial::RadialSolution::u)
      .def_property_readonly("rho", &radial::RadialSolution::rho)
      .def_property_readonly("c", &radial::RadialSolution::c_bdry)
      .def("F", [](const radial::RadialSolution& s, double t, const ProblemSpec& spec) {
        return radial::radial_F(s, t, spec);
      });

  using surfaces::RevolutionBody;
  py::class_<RevolutionBody>(m, "RevolutionBody")
      .def_static("sphere", &RevolutionBody::sphere, py::arg("n"), py::arg("radius") = 1.0,
                  py::arg("intervals") = 256)
      .def_static("spheroid", &RevolutionBody::spheroid, py::arg("n"), py::arg("polar"),
                  py::arg("equatorial"), py::arg("intervals") = 256)
      .def_static("cos_perturbed", &RevolutionBody::cos_perturbed, py::arg("n"), py::arg("amplitude"),
                  py::arg("mode") = 2, py::arg("radius") = 1.0, py::arg("intervals") = 256)
      .def_property_readonly("dim", &RevolutionBody::dim)
      .def_property_readonly("samples", &RevolutionBody::samples)
      .def("quermass", [](const RevolutionBody& b, int k) { return surfaces::quermass(b, k); })
      .def("minkowski_residual", [](const RevolutionBody& b, int k) { return surfaces::minkowski_residual(b, k); })
      .def("is_convex", [](const RevolutionBody& b) { return surfaces::is_convex(b); });

  py::class_<solver::ExteriorField>(m, "ExteriorField")
      .def_readonly("rho_hat", &solver::ExteriorField::rho_hat)
      .def_readonly("eps", &solver::ExteriorField::eps)
      .def_readonly("residual_norm", &solver::ExteriorField::residual_norm)
      .def_readonly("max_principle", &solver::ExteriorField::max_principle)
      .def_property_readonly("shape", [](const solver::ExteriorField& f) {
        return py::make_tuple(f.grid->Ns() + 1, f.grid->Ntheta() + 1);
      })
      .def("value", &solver::ExteriorField::value)
      .def("boundary_gradient", [](const solver::ExteriorField& f) { return solver::boundary_gradient(f); });

  m.def("solve_exterior",
        [](const RevolutionBody& body, const ProblemSpec& spec, int Ns, int Ntheta, double R_out) {
          solver::SolveOptions o;
          o.Ns = Ns;
          o.Ntheta = Ntheta;
          o.R_out = R_out;
          py::gil_scoped_release release;
          return solver::solve_exterior(body, spec, o);
        },
        py::arg("body"), py::arg("spec"), py::arg("Ns") = 256, py::arg("Ntheta") = 128,
        py::arg("R_out") = 40.0);

  m.def("monotonicity_audit",
        [](const solver::ExteriorField& fine, const solver::ExteriorField& coarse, const ProblemSpec& spec) {
          const auto r = monotone::monotonicity_audit(fine, coarse, spec);
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["t"] = row.value.t;
            d["F"] = row.value.F;
            d["violation"] = row.violation;
            d["limit_gap"] = row.limit_gap;
            rows.append(d);
          }
          py::dict d;
          d["rows"] = rows;
          d["limit"] = r.limit;
          d["tol"] = r.tol;
          d["monotone"] = r.monotone;
          d["strict"] = r.strict();
          d["constant"] = r.constant;
          return d;
        });

  m.def("inequality_ledger", [](const solver::ExteriorField& f, const ProblemSpec& spec) {
    py::list out;
    for (const auto& e : identities::inequality_ledger(identities::boundary_data(f), spec))
      out.append(ledger_dict(e));
    return out;
  });

  m.def("certify_ball", [](const solver::ExteriorField& f, const ProblemSpec& spec) {
    const auto r = identities::certify_ball(f, spec);
    py::dict d;
    d["verdict"] = std::string(identities::to_string(r.verdict));
    d["spread"] = r.spread;
    d["c_measured"] = r.c_measured;
    d["c_predicted"] = r.c_predicted;
    d["squeeze_rel"] = r.squeeze_rel;
    d["reason"] = r.reason;
    return d;
  });
}

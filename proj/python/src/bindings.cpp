#include <algorithm>

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgflow/bessel.hpp"
#include "sgflow/couette.hpp"
#include "sgflow/error.hpp"
#include "sgflow/material.hpp"
#include "sgflow/poiseuille.hpp"

namespace py = pybind11;
using namespace sgflow;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict to_dict(const SolverReport& r) {
  py::dict d;
  d["sup_residual"] = r.sup_residual;
  d["bc_residuals"] = r.bc_residuals;
  d["dual_solver_gap"] = r.dual_solver_gap >= 0.0 ? py::object(py::float_(r.dual_solver_gap))
                                                  : py::object(py::none());
  d["grid_n"] = r.grid_n;
  return d;
}

py::dict to_dict(const couette::PressureSolve& s) {
  py::dict d;
  d["sigma"] = to_array(s.sigma);
  d["pi_prime"] = to_array(s.pi_prime);
  d["pi"] = to_array(s.pi);
  d["method"] = std::string(couette::to_string(s.method));
  d["report"] = to_dict(s.report);
  return d;
}

py::tuple profile_tuple(const RadialProfile& p) {
  return py::make_tuple(to_array(p.sigma), to_array(p.u));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form flows of a second-gradient fluid in a cylinder";

  static py::exception<Error> base(m, "Error", PyExc_ValueError);
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
  static py::exception<ConstraintViolation> constraint(m, "ConstraintViolation", base.ptr());
  static py::exception<SolverError> solver(m, "SolverError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(domain.ptr(), e.what());
    } catch (const ValidationError& e) {
      PyErr_SetString(validation.ptr(), e.what());
    } catch (const ConstraintViolation& e) {
      PyErr_SetString(constraint.ptr(), e.what());
    } catch (const SolverError& e) {
      PyErr_SetString(solver.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::enum_<BoundaryCondition>(m, "BoundaryCondition")
      .value("STRONG", BoundaryCondition::StrongAdherence)
      .value("WEAK", BoundaryCondition::WeakAdherence);

  py::class_<LambdaSet>(m, "LambdaSet")
      .def(py::init([](double l0, double l1, double l2, double l3, double l4) {
             return LambdaSet{l0, l1, l2, l3, l4};
           }),
           py::arg("lambda0") = 0.0, py::arg("lambda1") = 0.0, py::arg("lambda2") = 0.0,
           py::arg("lambda3") = 0.0, py::arg("lambda4") = 0.0)
      .def_static("spherical", &LambdaSet::spherical, py::arg("lambda1"), py::arg("lambda0") = 0.0)
      .def_static("from_independent", &LambdaSet::from_independent, py::arg("lambda2"),
                  py::arg("lambda3"), py::arg("lambda4"), py::arg("lambda0") = 0.0)
      .def_readwrite("lambda0", &LambdaSet::lambda0)
      .def_readwrite("lambda1", &LambdaSet::lambda1)
      .def_readwrite("lambda2", &LambdaSet::lambda2)
      .def_readwrite("lambda3", &LambdaSet::lambda3)
      .def_readwrite("lambda4", &LambdaSet::lambda4)
      .def("consistency_gap", &LambdaSet::consistency_gap)
      .def("validate", &LambdaSet::validate)
      .def("__repr__", [](const LambdaSet& l) {
        return "LambdaSet(" + std::to_string(l.lambda0) + ", " + std::to_string(l.lambda1) + ", " +
               std::to_string(l.lambda2) + ", " + std::to_string(l.lambda3) + ", " +
               std::to_string(l.lambda4) + ")";
      });

  auto bessel = m.def_submodule("bessel", "Modified Bessel functions of orders 0 and 1");
  bessel.def("i0", py::vectorize(&bessel::i0));
  bessel.def("i1", py::vectorize(&bessel::i1));
  bessel.def("k0", py::vectorize(&bessel::k0));
  bessel.def("k1", py::vectorize(&bessel::k1));
  bessel.def("i0_scaled", py::vectorize(&bessel::i0_scaled));
  bessel.def("i1_scaled", py::vectorize(&bessel::i1_scaled));
  bessel.def("k0_scaled", py::vectorize(&bessel::k0_scaled));
  bessel.def("k1_scaled", py::vectorize(&bessel::k1_scaled));

  auto pois = m.def_submodule("poiseuille", "Pressure-driven flow in a tube");
  pois.def("u_classical", py::vectorize(&poiseuille::u_classical));
  pois.def("u_strong", py::vectorize(&poiseuille::u_strong), py::arg("sigma"), py::arg("lambda1"));
  pois.def("u_weak", &poiseuille::u_weak, py::arg("sigma"), py::arg("lambdas"));
  pois.def("velocity", &poiseuille::velocity, py::arg("sigma"), py::arg("bc"), py::arg("lambdas"));
  pois.def("phi", &poiseuille::phi, py::arg("bc"), py::arg("lambdas"));
  pois.def("phi_quadrature", &poiseuille::phi_quadrature, py::arg("bc"), py::arg("lambdas"),
           py::arg("abs_tol") = 1e-12);
  pois.def("hypertraction_residual", &poiseuille::hypertraction_residual, py::arg("lambdas"));
  pois.def(
      "sample_profile",
      [](BoundaryCondition bc, const LambdaSet& l, std::size_t n) {
        return profile_tuple(poiseuille::sample_profile(bc, l, n));
      },
      py::arg("bc"), py::arg("lambdas"), py::arg("n") = 401);
  pois.def(
      "ode_residual",
      [](BoundaryCondition bc, const LambdaSet& l, std::size_t n) {
        return poiseuille::ode_residual(poiseuille::sample_profile(bc, l, n), l.lambda1).sup_norm();
      },
      py::arg("bc"), py::arg("lambdas"), py::arg("n") = 801,
      "Sup of the sampled ODE residual of the analytic profile.");

  auto tc = m.def_submodule("couette", "Flow inside a rotating cylinder");
  tc.def("u_strong", py::vectorize(&couette::u_strong_tc), py::arg("sigma"), py::arg("lambda1"));
  tc.def("velocity", &couette::velocity, py::arg("sigma"), py::arg("bc"), py::arg("lambda1"));
  tc.def("forcing", py::overload_cast<double, BoundaryCondition, double, double>(&couette::forcing),
         py::arg("sigma"), py::arg("bc"), py::arg("lambda0"), py::arg("lambda1"));
  tc.def(
      "sample_profile",
      [](BoundaryCondition bc, double l1, std::size_t n) {
        return profile_tuple(couette::sample_profile(bc, l1, n));
      },
      py::arg("bc"), py::arg("lambda1"), py::arg("n") = 401);
  tc.def(
      "pressure",
      [](BoundaryCondition bc, double l0, double l1, std::size_t n) {
        const auto dual = couette::solve_pressure_dual({bc, l0, l1}, n);
        py::dict d;
        d["closed_form"] = to_dict(dual.closed_form);
        d["finite_difference"] = to_dict(dual.finite_difference);
        d["gap"] = dual.gap;
        return d;
      },
      py::arg("bc"), py::arg("lambda0"), py::arg("lambda1"), py::arg("n") = 1600,
      "Both pressure solvers on the same grid and their sup gap in pi'.");
  tc.def(
      "pressure_classical",
      [](std::size_t n) { return to_dict(couette::pressure_classical(uniform_grid(n))); },
      py::arg("n") = 401);
  tc.def(
      "solve_pressure_ode",
      [](double l1, const std::function<double(double)>& phi, std::size_t n, bool richardson) {
        const auto s = couette::solve_pressure_ode(l1, phi, n, {couette::kAxisOffset, richardson});
        return py::make_tuple(to_array(s.sigma), to_array(s.w));
      },
      py::arg("lambda1"), py::arg("phi"), py::arg("n"), py::arg("richardson") = true);

  auto mat = m.def_submodule("material", "Viscosity coefficients and constraints");
  mat.def(
      "lengths_from_etas",
      [](double mu, double eta1, double eta2, double eta3) {
        const auto l = material::lengths_from_etas({mu, eta1, eta2, eta3});
        py::dict d;
        d["ell1"] = l.ell1();
        d["ell2"] = l.ell2();
        d["ell3"] = l.ell3();
        d["ell4"] = l.ell4();
        return d;
      },
      py::arg("mu"), py::arg("eta1"), py::arg("eta2"), py::arg("eta3"));
  mat.def(
      "etas_from_lengths",
      [](double mu, double ell2, double ell3, double ell4) {
        const auto e = material::etas_from_lengths(mu, material::LengthScales(0.0, ell2, ell3, ell4));
        return py::make_tuple(e.eta1, e.eta2, e.eta3);
      },
      py::arg("mu"), py::arg("ell2"), py::arg("ell3"), py::arg("ell4"));
  mat.def(
      "check_dissipativity",
      [](double eta1, double eta2, double eta3) {
        const auto c = material::check_dissipativity(eta1, eta2, eta3);
        py::dict d;
        d["satisfied"] = c.satisfied;
        d["margins"] = py::make_tuple(c.margins[0], c.margins[1]);
        d["violated"] = c.violated;
        return d;
      },
      py::arg("eta1"), py::arg("eta2"), py::arg("eta3"));
}

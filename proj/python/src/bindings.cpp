#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qsppoly/bernstein.hpp"
#include "qsppoly/cli.hpp"
#include "qsppoly/correction.hpp"
#include "qsppoly/equiripple.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/json_io.hpp"
#include "qsppoly/membership.hpp"

namespace py = pybind11;
using namespace qsppoly;

namespace {

// Reports cross the boundary as the same v1 JSON the CLI writes.
py::object to_py(const json_io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

TargetFunction target_from_py(const py::object& f) {
  if (py::isinstance<py::str>(f)) return TargetFunction::parse_builtin(f.cast<std::string>());
  if (py::isinstance<Poly>(f)) return TargetFunction::polynomial(f.cast<Poly>());
  auto fn = f.cast<std::function<double(double)>>();
  // Called from C++ only while the GIL is held.
  return TargetFunction::callable("python", std::move(fn));
}

py::tuple approximation(const Approximation& a) {
  return py::make_tuple(a.u, to_py(json_io::to_json(a.report)));
}

}  // namespace

PYBIND11_MODULE(_qsppoly, m) {
  m.doc() = "Polynomial families P, Q, P', Q' and constructive approximation within them";

  static py::exception<Error> exc(m, "QsppolyError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      py::object inst = err(e.what());
      inst.attr("code") = to_string(e.code());
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<Poly>(m, "Poly")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def_property_readonly("coeffs", &Poly::coeffs)
      .def_property_readonly("degree", &Poly::degree)
      .def("__call__", [](const Poly& p, double x) { return p(x); })
      .def("derivative", [](const Poly& p) { return derivative(p); })
      .def("to_json", [](const Poly& p) { return to_py(json_io::to_json(p)); })
      .def("__repr__", [](const Poly& p) {
        std::ostringstream s;
        s << "Poly(degree=" << p.degree() << ")";
        return s.str();
      });

  py::class_<CenteredOddPoly>(m, "CenteredOddPoly")
      .def(py::init<std::vector<double>>(), py::arg("odd_coeffs"))
      .def_property_readonly("odd_coeffs", &CenteredOddPoly::odd_coeffs)
      .def_property_readonly("degree", &CenteredOddPoly::degree)
      .def("__call__", [](const CenteredOddPoly& p, double x) { return p(x); })
      .def("to_monomial", [](const CenteredOddPoly& p) { return from_centered_odd(p); })
      .def("to_json", [](const CenteredOddPoly& p) { return to_py(json_io::to_json(p)); });

  m.def("default_tolerance", &default_tolerance);

  m.def(
      "check_family",
      [](const Poly& p, const std::string& fam, std::optional<double> tol) {
        return to_py(json_io::to_json(
            check_family(p, family_from_string(fam), tol.value_or(default_tolerance()))));
      },
      py::arg("p"), py::arg("family"), py::arg("tol") = py::none(),
      "Membership report as a dict; 'verdict' is Member, MemberWithinTol or NotMember.");

  m.def(
      "approximate",
      [](const py::object& target, const std::string& fam, double delta, const std::string& mode) {
        const Family f = family_from_string(fam);
        const TargetFunction t = target_from_py(target);
        if (f == Family::P || f == Family::Q) {
          return approximation(approximate_in_family(t, f, delta, correction_mode_from_string(mode)));
        }
        return approximation(approximate_on_subset({Interval(0, 1)}, t, f, delta));
      },
      py::arg("target"), py::arg("family"), py::arg("delta"), py::arg("mode") = "minimal",
      "target: builtin name ('square', 'scaled_bump:0.9', ...), a Poly, or a callable on [0,1]. "
      "Returns (Poly, report dict).");

  m.def(
      "approximate_on_subset",
      [](const std::vector<std::pair<double, double>>& A, const py::object& target,
         const std::string& fam, double eps) {
        std::vector<Interval> iv;
        for (const auto& [lo, hi] : A) iv.emplace_back(lo, hi);
        return approximation(
            approximate_on_subset(iv, target_from_py(target), family_from_string(fam), eps));
      },
      py::arg("intervals"), py::arg("target"), py::arg("family"), py::arg("eps"));

  m.def("bernstein_step", &bernstein_step, py::arg("L"));
  m.def("bernstein_step_at", &bernstein_step_at, py::arg("L"), py::arg("x"));
  m.def("step_parity_check", &step_parity_check, py::arg("L"));
  m.def(
      "step_error",
      [](int L, double eps) {
        const auto e = step_error(L, StepDomain(eps));
        return py::make_tuple(e.measured, e.bound);
      },
      py::arg("L"), py::arg("eps"), "(measured, bound)");

  m.def(
      "equiripple",
      [](std::vector<double> a, double kappa, int max_rounds) {
        return to_py(json_io::to_json(equiripple_solve(ZeroConfig(std::move(a)), kappa, max_rounds)));
      },
      py::arg("a"), py::arg("kappa") = 1e-4, py::arg("max_rounds") = 200);
  m.def(
      "equispaced_zeros",
      [](int ell, double a_ell) { return ZeroConfig::equispaced(ell, a_ell).a; },
      py::arg("ell"), py::arg("a_ell"));
  m.def(
      "build_ripple_poly",
      [](std::vector<double> a) {
        const auto b = build_R_poly(ZeroConfig(std::move(a)));
        return py::make_tuple(b.poly, b.condition);
      },
      py::arg("a"), "(CenteredOddPoly, condition estimate)");
  m.def(
      "gap_report",
      [](std::vector<double> a, double kappa, double eps) {
        return to_py(json_io::to_json(gap_report(equiripple_solve(ZeroConfig(std::move(a)), kappa), eps)));
      },
      py::arg("a"), py::arg("kappa"), py::arg("eps"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "(exit code, stdout, stderr)");
}

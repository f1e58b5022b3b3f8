#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdap/circle.hpp"
#include "mdap/cli.hpp"
#include "mdap/digitset.hpp"
#include "mdap/expsums.hpp"
#include "mdap/fourier.hpp"
#include "mdap/primetables.hpp"
#include "mdap/sievenumerics.hpp"
#include "mdap/sieveweights.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace mdap;

namespace {

py::tuple rational(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Missing-digit primes in arithmetic progressions: desk-scale kernels";

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<CheckFailed> check(m, "CheckFailed", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::set_error(precondition, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget, e.what());
    } catch (const CheckFailed& e) {
      py::set_error(check, e.what());
    }
  });

  py::class_<DigitSystem>(m, "DigitSystem")
      .def(py::init<int, int, std::optional<int>>(), "base"_a, "excluded"_a, "residue"_a = py::none())
      .def_property_readonly("base", &DigitSystem::base)
      .def_property_readonly("excluded", &DigitSystem::excluded)
      .def_property_readonly("residue", &DigitSystem::residue)
      .def("contains", &DigitSystem::contains, "n"_a)
      .def("count", &DigitSystem::count, "k"_a)
      .def("enumerate", &DigitSystem::enumerate, "k"_a)
      .def("unrank", &DigitSystem::unrank, "k"_a, "i"_a)
      .def("rank", &DigitSystem::rank, "k"_a, "n"_a)
      .def_property_readonly("zeta", &DigitSystem::zeta)
      .def_property_readonly("kappa", [](const DigitSystem& ds) { return rational(ds.kappa()); });

  py::class_<PrimeTables>(m, "PrimeTables")
      .def(py::init<u64>(), "limit"_a)
      .def_property_readonly("limit", &PrimeTables::limit)
      .def("spf", &PrimeTables::spf, "n"_a)
      .def("is_prime", &PrimeTables::is_prime, "n"_a)
      .def("primes", &PrimeTables::primes, py::return_value_policy::copy)
      .def("factorize", &PrimeTables::factorize, "n"_a)
      .def("mangoldt", &PrimeTables::mangoldt, "n"_a)
      .def("mobius", &PrimeTables::mobius, "n"_a)
      .def("totient", &PrimeTables::totient, "n"_a)
      .def("tau", &PrimeTables::tau, "n"_a, "h"_a)
      .def("quadratic_class",
           [](const PrimeTables& t, u64 n) {
             auto q = t.quadratic_class(n);
             return py::make_tuple(q.in_B, q.in_Bcal);
           },
           "n"_a, "(in_B, in_Bcal)")
      .def("psi_progression",
           [](const PrimeTables& t, u64 y, u64 d, u64 c, u64 q, u64 mres, bool three_mod_8) {
             return t.psi_progression(y, d, c, q, mres,
                                      three_mod_8 ? PsiVariant::three_mod_8 : PsiVariant::plain);
           },
           "y"_a, "d"_a, "c"_a, "q"_a = 1, "m"_a = 0, "three_mod_8"_a = false);

  m.def("eval_hat", &eval_hat, "ds"_a, "k"_a, "theta"_a, "Fourier transform of the digit set at theta");
  m.def("inversion_indicator", py::overload_cast<const DigitSystem&, int, u64>(&inversion_indicator),
        "ds"_a, "k"_a, "n"_a);
  m.def("l1_and_cb",
        [](const DigitSystem& ds, int k) {
          auto s = l1_and_cb(ds, k);
          return py::dict("k"_a = s.k, "l1_total"_a = s.l1_total, "c_b_estimate"_a = s.c_b_estimate,
                          "alpha_b_estimate"_a = s.alpha_b_estimate);
        },
        "ds"_a, "k"_a);
  m.def("hybrid_sum",
        [](const DigitSystem& ds, int k, u64 Q, u64 B) {
          auto r = hybrid_sum(ds, k, Q, B);
          return py::dict("value"_a = r.value, "bound"_a = r.bound, "ratio"_a = r.ratio, "points"_a = r.points);
        },
        "ds"_a, "k"_a, "Q"_a, "B"_a);

  m.def("dirichlet_approx",
        [](double theta, u64 Q, double X) {
          auto ta = dirichlet_approx(theta, Q, X);
          return py::make_tuple(ta.a, ta.q, ta.beta);
        },
        "theta"_a, "Q"_a, "X"_a = 1.0, "(a, q, beta) with |theta - a/q| <= 1/(qQ)");
  m.def("lambda_hat", &lambda_hat, "tables"_a, "X"_a, "d"_a, "c"_a, "theta"_a);
  m.def("vaughan_decompose",
        [](const PrimeTables& t, u64 X, u64 U, u64 d, u64 c, double theta) {
          auto v = vaughan_decompose(t, X, U, d, c, theta);
          return py::dict("S"_a = std::vector<cplx>(v.S.begin(), v.S.end()), "direct"_a = v.direct,
                          "residual"_a = v.residual);
        },
        "tables"_a, "X"_a, "U"_a, "d"_a, "c"_a, "theta"_a);

  m.def("sieve_fn", [](const std::string& kind, double u) { return sieve_fn(parse_sieve_fn(kind), u); },
        "kind"_a, "u"_a);
  m.def("I_sem", &I_sem, "rho"_a, "alpha"_a);
  m.def("I_lin", &I_lin, "rho"_a, "alpha"_a);
  m.def("euler_constants",
        [](const PrimeTables& t, u64 p_limit) {
          auto e = euler_constants(t, p_limit);
          auto iv = [](const Interval& i) { return py::make_tuple(i.value, i.lo, i.hi); };
          return py::dict("C1"_a = iv(e.C1), "C2"_a = iv(e.C2), "C3"_a = iv(e.C3), "singular"_a = iv(e.singular));
        },
        "tables"_a, "p_limit"_a);
  m.def("b_over_phi", [](u64 b) { return rational(b_over_phi(b).closed_form); }, "b"_a);
  m.def("support_member",
        [](u64 d, int degree, bool upper, double D, double z, const PrimeTables& t) {
          SieveSpec s{degree, upper ? SieveSide::upper : SieveSide::lower, D, z, all_primes()};
          return support_member(d, s, t);
        },
        "d"_a, "degree"_a, "upper"_a, "D"_a, "z"_a, "tables"_a);

  m.def("classify_arc",
        [](u64 t, u64 X, double C) {
          auto l = classify_arc(t, X, C);
          return py::make_tuple(arc_name(l.kind), l.a, l.q, l.eta);
        },
        "t"_a, "X"_a, "C"_a);
  m.def("discrepancy_E", &discrepancy_E, "tables"_a, "ds"_a, "X"_a, "d"_a, "c"_a);
  m.def("arc_split",
        [](const PrimeTables& t, const DigitSystem& ds, u64 X, u64 d, u64 c, double C) {
          auto s = arc_split(t, ds, X, d, c, C);
          return py::dict("major"_a = s.major, "minor"_a = s.minor, "direct"_a = s.direct,
                          "main_term"_a = s.main_term, "conservation_error"_a = s.conservation_error);
        },
        "tables"_a, "ds"_a, "X"_a, "d"_a, "c"_a, "C"_a = 2.0);
  m.def("buchstab_and_app",
        [](const PrimeTables& t, const DigitSystem& ds, u64 X, double alpha) {
          auto r = buchstab_and_app(t, ds, X, alpha);
          return py::dict("S"_a = r.S, "T"_a = r.T, "total"_a = r.total, "app_count"_a = r.app_count,
                          "predicted_scale"_a = r.predicted_scale);
        },
        "tables"_a, "ds"_a, "X"_a, "alpha"_a);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          auto r = run_cli(args);
          return py::make_tuple(r.exit_code, r.out, r.err);
        },
        "args"_a, "Run a CLI subcommand in-process; returns (exit_code, stdout, stderr)");

  m.attr("__version__") = "0.1.0";
}

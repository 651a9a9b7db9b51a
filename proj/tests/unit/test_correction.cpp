#include <cmath>

#include "doctest.h"
#include "qsppoly/bernstein.hpp"
#include "qsppoly/correction.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/membership.hpp"
#include "qsppoly/mono_interp.hpp"
#include "qsppoly/realroots.hpp"

using namespace qsppoly;

namespace {

double grid_error(const Poly& u, const TargetFunction& f, int n = 10000) {
  double e = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    e = std::max(e, std::fabs(u(x) - f(x)));
  }
  return e;
}

}  // namespace

TEST_CASE("r_poly expansions") {
  CHECK(r_poly({1, 1}) == Poly{0, 0, 0, 1, -1});
  CHECK(r_poly({1, 2}) == Poly{0, 0, 0, 1, -2, 1});
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      const WidePoly r = r_poly_wide({a, b});
      CHECK(r(Wide(0)) == Wide(0));
      CHECK(r(Wide(1)) == Wide(0));
    }
  CHECK_THROWS_AS(CorrectionParams(0, 1), Error);
}

TEST_CASE("r_sup closed form") {
  CHECK(r_sup({1, 2}) == doctest::Approx(0.03456).epsilon(1e-14));
  CHECK(r_argmax({1, 2}) == doctest::Approx(0.6));
  CHECK(r_sup({1, 3}) == doctest::Approx(0.015625).epsilon(1e-14));
  CHECK(r_argmax({1, 3}) == doctest::Approx(0.5));
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      const CorrectionParams cp(a, b);
      CHECK(std::fabs(r_sup(cp) - sup_abs_on(r_poly(cp), Interval(0, 1)).value) <= 1e-10);
      CHECK(r_sup(cp) < std::ldexp(1.0, -std::min(2 * a + 1, b)));
    }
}

TEST_CASE("r signs and monotonicity") {
  const double B = 50;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      const Poly r = r_poly({a, b});
      CHECK(sign_on(r, Interval(0, 1), true).kind == SignKind::StrictlyPositive);
      // Open at 0: the root there is excluded by strict_interior.
      CHECK(sign_on(r, Interval(-B, 0), true).kind == SignKind::StrictlyNegative);
      const Poly signed_r = (b % 2 == 0) ? r : scale(r, -1.0);
      CHECK(sign_on(signed_r, Interval(1, B), true).kind == SignKind::StrictlyPositive);
      const auto d = sign_on(derivative(r), Interval(-B, 0), true);
      CHECK((d.kind == SignKind::StrictlyPositive || d.kind == SignKind::NonNegative));
    }
}

TEST_CASE("r dominance") {
  auto grid = [](double lo, double hi, auto&& fn) {
    for (int i = 1; i < 400; ++i) fn(lo + (hi - lo) * i / 400.0);
  };
  for (int a1 = 1; a1 <= 5; ++a1)
    for (int a2 = a1 + 1; a2 <= 5; ++a2)
      for (int b1 = 1; b1 <= 5; ++b1)
        for (int b2 = b1 + 1; b2 <= 5; ++b2) {
          const Poly r11 = r_poly({a1, b1}), r21 = r_poly({a2, b1}), r12 = r_poly({a1, b2});
          const double s1 = b1 % 2 ? -1 : 1, s2 = b2 % 2 ? -1 : 1;
          int bad = 0;
          auto below = [&](double x) {
            bad += r11(x) < r21(x) || r11(x) < r12(x);
          };
          grid(0, 1, below);
          grid(-3, -1, below);
          grid(2, 5, [&](double x) {
            bad += (r11(x) - r21(x)) * s1 > 0;
            bad += s1 * r11(x) > s2 * r12(x);
          });
          CHECK(bad == 0);
        }
}

TEST_CASE("select_tail_params recipe") {
  CHECK(select_tail_params(Poly{-2.0}, TailVariant::PositiveBeyond2, Parity::Even).beta == 2);
  const auto c = select_tail_params(Poly{-2.0}, TailVariant::PositiveBeyond2, Parity::Even);
  CHECK(c.alpha == 1);
  CHECK(r_poly(c)(2.0) - 2.0 == doctest::Approx(6.0));

  const auto z = select_tail_params(Poly{}, TailVariant::PositiveBeyond2, Parity::Even);
  CHECK(z.alpha == 1);
  CHECK(z.beta == 2);

  const auto v = select_tail_params(Poly{0, 1}, TailVariant::NegativeBelowMinus1, Parity::Any);
  CHECK(v.alpha == 1);
  CHECK(v.beta == 1);
  CHECK(sign_on(add(r_poly(v), Poly{0, 1}), Interval(-100, -1), false).kind ==
        SignKind::StrictlyNegative);

  const auto o = select_tail_params(Poly{0, 3, -1}, TailVariant::NegativeBeyond2, Parity::Odd);
  CHECK(o.beta % 2 == 1);
  CHECK(o.beta > 2);

  CHECK_THROWS_AS(select_tail_params(Poly{1.0}, TailVariant::PositiveBeyond2, Parity::Odd), Error);
}

TEST_CASE("pin_endpoints makes the coefficient sum exact") {
  const Poly q{1e-3, 0.3, 0.7000000000000003, 0.1, -0.1};
  const Poly p = pin_endpoints(q, Family::P);
  CHECK(p.coeffs()[0] == 0.0);
  Wide s(0);
  for (double c : p.coeffs()) s += Wide(c);
  CHECK(s == Wide(1));
  const Poly z = pin_endpoints(q, Family::Q);
  Wide t(0);
  for (double c : z.coeffs()) t += Wide(c);
  CHECK(t == Wide(0));
}

TEST_CASE("correct_to_family fast path") {
  const auto res = correct_to_family(Poly{0, 1}, Family::P, 0.1);
  CHECK(res.u == Poly{0, 1});
  CHECK_FALSE(res.trace.corrected);
}

TEST_CASE("correct_to_family rejects a q without the step-2 structure") {
  // Positive on [-1,0): not correctable by adding r.
  const Poly q{0, 0, 1};
  try {
    correct_to_family(q, Family::P, 0.1);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("density pipeline: P targets") {
  for (const char* name : {"square", "half_sine"}) {
    CAPTURE(name);
    const auto f = TargetFunction::parse_builtin(name);
    const auto res = approximate_in_family(f, Family::P, 0.15);
    CHECK(check_family(res.u, Family::P).verdict == Verdict::Member);
    CHECK(check_family(poly_cast<Wide>(res.u), Family::P).verdict == Verdict::Member);
    CHECK(grid_error(res.u, f) < 0.15);
    CHECK(res.report.error == doctest::Approx(grid_error(res.u, f)));
  }
}

TEST_CASE("density pipeline: Q targets") {
  const auto f = TargetFunction::parse_builtin("scaled_bump:0.9");
  const auto res = approximate_in_family(f, Family::Q, 0.15);
  CHECK(check_family(res.u, Family::Q).verdict == Verdict::Member);
  CHECK(grid_error(res.u, f) < 0.15);
  if (res.report.trace.corrected) {
    CHECK(res.report.trace.final_params.beta % 2 == 1);
    CHECK(sign_on(res.u, Interval(1 + 1e-6, 50), false).kind == SignKind::StrictlyNegative);
  }

  const auto zero = approximate_in_family(TargetFunction::builtin("zero"), Family::Q, 0.2);
  CHECK(zero.u == Poly{0, 0.2, -0.2});
  CHECK(zero.report.error == doctest::Approx(0.05));
  CHECK(check_family(zero.u, Family::Q).verdict == Verdict::Member);
}

TEST_CASE("identity survives the pipeline") {
  const auto res = approximate_in_family(TargetFunction::builtin("identity"), Family::P, 0.1);
  CHECK(res.u == Poly{0, 1});
  CHECK(res.report.error == 0.0);
}

TEST_CASE("targets outside the class are rejected") {
  try {
    approximate_in_family(TargetFunction::builtin("square"), Family::Q, 0.1);
    FAIL("expected TargetNotInClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetNotInClass);
  }
}

TEST_CASE("ProofFaithful agrees with MinimalSearch") {
  struct Case {
    const char* f;
    Family fam;
  };
  for (const Case c : {Case{"square", Family::P}, Case{"half_sine", Family::P},
                       Case{"scaled_bump:0.9", Family::Q}}) {
    CAPTURE(c.f);
    const auto f = TargetFunction::parse_builtin(c.f);
    const auto fast = approximate_in_family(f, c.fam, 0.15, CorrectionMode::MinimalSearch);
    const auto proof = approximate_in_family(f, c.fam, 0.15, CorrectionMode::ProofFaithful);
    CHECK(check_family(proof.u, c.fam).verdict == Verdict::Member);
    CHECK(proof.report.trace.exact_verdict == Verdict::Member);
    CHECK(proof.report.error < 0.15);
    const auto& t = proof.report.trace;
    if (t.corrected) {
      int sa = 0, sb = 0;
      for (const auto& cp : t.tail_params) {
        sa += cp.alpha;
        sb += cp.beta;
        CHECK(cp.beta % 2 == (c.fam == Family::P ? 0 : 1));
      }
      CHECK(t.final_params.alpha == sa);
      CHECK(t.final_params.beta == sb + (c.fam == Family::P ? 2 * t.m + t.beta0 : 0));
      // The search never needs more degree than the proof's assembly.
      CHECK(fast.u.degree() <= proof.u.degree());
    }
  }
}

TEST_CASE("subset extension is linear across gaps") {
  const auto half = TargetFunction::callable("half", [](double) { return 0.5; });
  const auto g = extend_across_gaps({Interval(0.2, 0.8)}, half, Family::P);
  CHECK(g(0.0) == 0.0);
  CHECK(g(0.1) == doctest::Approx(0.25));
  CHECK(g(0.5) == 0.5);
  CHECK(g(0.9) == doctest::Approx(0.75));
  CHECK(g(1.0) == 1.0);
  CHECK_THROWS_AS(extend_across_gaps({Interval(0.2, 0.5), Interval(0.4, 0.8)}, half, Family::P),
                  Error);
}

TEST_CASE("step function on the gap domain") {
  const double e = 0.1;
  const std::vector<Interval> A{Interval(0, 0.5 - e), Interval(0.5 + e, 1)};
  const auto theta = TargetFunction::builtin("theta_step", e);
  const auto res = approximate_on_subset(A, theta, Family::Pprime, 0.3);
  CHECK(check_family(res.u, Family::Pprime).verdict == Verdict::Member);
  double err = 0;
  for (const auto& I : A)
    for (int i = 0; i <= 4000; ++i) {
      const double x = I.lo + I.width() * i / 4000;
      err = std::max(err, std::fabs(res.u(x) - theta(x)));
    }
  CHECK(err < 0.3);
}

TEST_CASE("identity on the full interval") {
  const auto res = approximate_on_subset({Interval(0, 1)}, TargetFunction::builtin("identity"),
                                         Family::Pprime, 0.1);
  CHECK(res.u == Poly{0, 1});
}

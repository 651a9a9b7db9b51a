#include <cmath>
#include <random>

#include "doctest.h"
#include "qsppoly/equiripple.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/realroots.hpp"

using namespace qsppoly;

namespace {

// Zeros with a_ell in [0.28, 0.40] and interval widths within a factor 1.5.
ZeroConfig random_config(std::mt19937_64& rng, int ell) {
  std::uniform_real_distribution<double> U(0, 1);
  const double a_ell = 0.28 + 0.12 * U(rng);
  std::vector<double> w(static_cast<std::size_t>(ell));
  double total = 0;
  for (auto& x : w) total += (x = 1 + 0.5 * U(rng));
  std::vector<double> a;
  double acc = 0;
  for (double x : w) a.push_back((acc += x) / total * a_ell);
  a.back() = a_ell;
  return ZeroConfig(a);
}

}  // namespace

TEST_CASE("ZeroConfig invariants") {
  CHECK_THROWS_AS(ZeroConfig({0.3, 0.2}), Error);
  CHECK_THROWS_AS(ZeroConfig({0.0}), Error);
  CHECK_THROWS_AS(ZeroConfig({0.5}), Error);
  CHECK_THROWS_AS(ZeroConfig(std::vector<double>{}), Error);
  const auto c = ZeroConfig::equispaced(3, 0.3);
  CHECK(c.a[0] == doctest::Approx(0.1));
  CHECK(c.a[2] == 0.3);
  CHECK(c.at(0) == 0.0);
}

TEST_CASE("build_R_poly, ell = 1") {
  const ZeroConfig cfg({0.3});
  const auto b = build_R_poly(cfg);
  CHECK(b.poly.odd_coeffs().size() == 3);
  CHECK(std::fabs(b.poly(0.0)) <= 1e-10);
  CHECK(std::fabs(b.poly(0.3)) <= 1e-10);
  CHECK(std::fabs(b.poly.derivative_at(0.3)) <= 1e-10);
  CHECK(b.poly(0.5) == 0.5);
  // Symmetry is structural.
  for (double x : {0.1, 0.27, 0.8})
    CHECK(b.poly(x) + b.poly(1 - x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ell = 1 closed form: unit peak") {
  // With a1 = (5 - sqrt 5)/8 the solution is p = 1/2 + 5z - 80z^3 + 256z^5.
  const ZeroConfig cfg({(5 - std::sqrt(5.0)) / 8});
  const auto b = build_R_poly(cfg);
  CHECK(b.poly.odd_coeffs()[0] == doctest::Approx(5).epsilon(1e-10));
  CHECK(b.poly.odd_coeffs()[1] == doctest::Approx(-80).epsilon(1e-10));
  CHECK(b.poly.odd_coeffs()[2] == doctest::Approx(256).epsilon(1e-10));
  const auto pk = peaks(b.poly, cfg);
  CHECK(pk.heights[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("structure of R_ell over random configs") {
  std::mt19937_64 rng(7);
  for (int ell = 1; ell <= 4; ++ell) {
    int redrawn = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const ZeroConfig cfg = random_config(rng, ell);
      CAPTURE(ell);
      CAPTURE(trial);
      RippleBuild b;
      try {
        b = build_R_poly(cfg);
      } catch (const Error& e) {
        // ell = 4 sits just below the conditioning limit; those draws are redrawn.
        REQUIRE(e.code() == ErrorCode::IllConditioned);
        ++redrawn;
        --trial;
        continue;
      }
      const auto& p = b.poly;
      for (int i = 0; i <= ell; ++i) CHECK(std::fabs(p(cfg.at(i))) <= 1e-9);
      for (int i = 1; i <= ell; ++i) CHECK(std::fabs(p.derivative_at(cfg.at(i))) <= 1e-9);

      const auto pk = peaks(p, cfg);
      for (int i = 1; i <= ell; ++i) {
        CHECK(pk.b[i - 1] > cfg.at(i - 1));
        CHECK(pk.b[i - 1] < cfg.at(i));
        CHECK(pk.heights[i - 1] > 0);
        const auto bd = peak_bounds(cfg, i);
        CHECK(bd.lower < pk.heights[i - 1]);
        CHECK(pk.heights[i - 1] < bd.upper);
      }

      double worst = 0;
      for (int k = 0; k <= 2000; ++k) worst = std::min(worst, p(0.5 * k / 2000));
      CHECK(worst >= -1e-9);

      const Poly x_form = from_centered_odd(p);
      CHECK(sign_on(x_form, Interval(-50, 0), true).kind == SignKind::StrictlyNegative);
      // All 4 ell critical points lie in (0,1).
      CHECK(roots_in(derivative(x_form), Interval(0, 1), 1e-13).size() ==
            static_cast<std::size_t>(4 * ell));
      // Increasing past the last zero.
      CHECK(sign_on(p.derivative_in_centered_variable(), Interval(cfg.at(ell) - 0.5, 0), true)
                .kind == SignKind::StrictlyPositive);
    }
    CHECK(redrawn <= 2);
  }
}

TEST_CASE("ell >= 5 is reported as ill conditioned") {
  for (double a : {0.25, 0.3, 0.35, 0.4}) {
    try {
      build_R_poly(ZeroConfig::equispaced(5, a));
      FAIL("expected IllConditioned");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IllConditioned);
    }
  }
}

TEST_CASE("peak_bounds closed form") {
  const auto b = peak_bounds(ZeroConfig({0.3}), 1);
  CHECK(b.lower == doctest::Approx(0.0016875).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(15000).epsilon(1e-12));
  CHECK_THROWS_AS(peak_bounds(ZeroConfig({0.3}), 2), Error);
  const auto c = peak_bounds(ZeroConfig({0.1, 0.2, 0.3}), 2);
  CHECK(c.lower > 0);
}

TEST_CASE("iterate") {
  // Single peak: nothing to exchange.
  const ZeroConfig one({0.3});
  CHECK(iterate(one, 1e-4).a == one.a);

  const ZeroConfig cfg({0.05, 0.3});
  const auto before = peaks(build_R_poly(cfg).poly, cfg);
  const ZeroConfig next = iterate(cfg, 1e-4);
  CHECK(next.a.back() == 0.3);
  CHECK(next.a[0] > 0.05);  // the narrow first interval widens
  const auto after = peaks(build_R_poly(next).poly, next);
  auto spread = [](const PeakData& d) {
    return std::fabs(d.heights[0] - d.heights[1]);
  };
  CHECK(spread(after) < spread(before));

  CHECK_THROWS_AS(iterate(cfg, 0.0), Error);
}

TEST_CASE("equiripple_solve") {
  const auto r1 = equiripple_solve(ZeroConfig({0.3}), 1e-4);
  CHECK(r1.converged);
  CHECK(r1.rounds == 1);
  CHECK(r1.delta == doctest::Approx(r1.peaks.heights[0]));

  const auto r3 = equiripple_solve(ZeroConfig::equispaced(3, 0.3), 1e-4, 200);
  CHECK(r3.converged);
  CHECK(r3.spread <= 0.01);
  CHECK(r3.config.a.back() == 0.3);
  CHECK(r3.in_P);

  double prev = 0;
  for (double a : {0.2, 0.3, 0.4}) {
    const auto r = equiripple_solve(ZeroConfig::equispaced(2, a), 1e-4);
    CHECK(r.converged);
    CHECK(r.delta > prev);
    prev = r.delta;
  }
}

TEST_CASE("not converging within the round budget") {
  try {
    equiripple_solve(ZeroConfig::equispaced(3, 0.3), 1e-4, 1);
    FAIL("expected NotConverged");
  } catch (const NotConvergedError& e) {
    CHECK(e.code() == ErrorCode::NotConverged);
    CHECK(e.last().rounds == 1);
    CHECK_FALSE(e.last().converged);
  }
}

TEST_CASE("gap_report") {
  const auto r = equiripple_solve(ZeroConfig({0.2}), 1e-4);
  const auto g = gap_report(r, 0.05);
  CHECK(g.p_at_gap == doctest::Approx(r.poly(0.45)));
  CHECK(g.residual == doctest::Approx(g.p_at_gap - g.delta));
  try {
    gap_report(r, 0.3);
    FAIL("expected GapInsideRippleRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GapInsideRippleRegion);
  }

  double prev = INFINITY;
  for (double a : {0.2, 0.25, 0.3, 0.35, 0.4}) {
    const auto g2 = gap_report(equiripple_solve(ZeroConfig({a}), 1e-4), 0.05);
    CHECK(g2.p_at_gap < prev);
    prev = g2.p_at_gap;
  }
}

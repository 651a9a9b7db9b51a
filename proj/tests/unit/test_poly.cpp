#include <cmath>
#include <random>

#include "doctest.h"
#include "qsppoly/errors.hpp"
#include "qsppoly/poly.hpp"

using namespace qsppoly;

namespace {
void check_coeffs(const Poly& p, std::vector<double> want, double tol = 1e-12) {
  REQUIRE(p.coeffs().size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(p.coeffs()[k] == doctest::Approx(want[k]).epsilon(tol));
}
}  // namespace

TEST_CASE("eval") {
  CHECK(Poly{0, 1}(0.7) == 0.7);
  CHECK(Poly{0, 0, 3, -2}(-1.0) == 5.0);
  CHECK(Poly{}(42.0) == 0.0);
}

TEST_CASE("zero trimming is exact") {
  CHECK(Poly{1, 0, 0}.degree() == 0);
  CHECK(Poly{1, 1e-300}.degree() == 1);
  CHECK(Poly{}.degree() == -1);
  CHECK(scale(Poly{0, 1, 2}, 0.0).is_zero());
  check_coeffs(add(Poly{0, 1}, Poly{1, -1}), {1});
  check_coeffs(mul(Poly{0, 1}, Poly{0, 1}), {0, 0, 1});
}

TEST_CASE("derivative") {
  check_coeffs(derivative(Poly{0, 0, 1}), {0, 2});
  CHECK(derivative(Poly{5}).is_zero());
  // x^3 (1-x)^2 = x^3 - 2x^4 + x^5
  check_coeffs(derivative(Poly{0, 0, 0, 1, -2, 1}), {0, 0, 3, -8, 5});
  check_coeffs(antiderivative(Poly{0, 2}), {0, 0, 1});
}

TEST_CASE("compose_affine") {
  check_coeffs(compose_affine(Poly{0, 0, 1}, 1.0, 1.0), {1, 2, 1});
  check_coeffs(compose_affine(Poly{0, 1}, -1.0, 1.0), {1, -1});
  // 3(1+u)^2 - 2(1+u)^3 = 1 - 3u^2 - 2u^3
  check_coeffs(compose_affine(Poly{0, 0, 3, -2}, 1.0, 1.0), {1, 0, -3, -2});
  const Poly p{0.3, -1.2, 0.7, 2.5};
  CHECK(compose_affine(p, 1.0, 0.0) == p);
}

TEST_CASE("divide_linear") {
  double rem = 0;
  const Poly q = divide_linear(Poly{6, -5, 1}, 2.0, &rem);
  check_coeffs(q, {-3, 1});
  CHECK(rem == 0.0);
}

TEST_CASE("root bounds") {
  CHECK(cauchy_bound(Poly{-1, 0, 1}) == 2.0);
  CHECK(cauchy_bound(Poly{0, 1}) == 1.0);
  CHECK(cauchy_bound(Poly{6, -5, 1}) == 7.0);
  CHECK_THROWS_AS(cauchy_bound(Poly{3}), Error);
  // Fujiwara for x^2 - 5x + 6 gives 2*max(5, sqrt(3)) = 10, so Cauchy wins.
  CHECK(root_bound(Poly{6, -5, 1}) >= 3.0);
  CHECK(root_bound(Poly{6, -5, 1}) <= 7.000001);
}

TEST_CASE("sup_abs_on") {
  auto s = sup_abs_on(Poly{0, 1, -1}, Interval(0, 1));
  CHECK(s.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.argmax == doctest::Approx(0.5).epsilon(1e-9));
  s = sup_abs_on(Poly{0, 1}, Interval(0, 1));
  CHECK(s.value == 1.0);
  CHECK(s.argmax == 1.0);
  s = sup_abs_on(Poly{0, 0, 0, 1, -2, 1}, Interval(0, 1));
  CHECK(s.value == doctest::Approx(0.03456).epsilon(1e-12));
  CHECK(s.argmax == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("interval rejects lo > hi") { CHECK_THROWS_AS(Interval(1, 0), Error); }

TEST_CASE("centered odd polynomials") {
  check_coeffs(from_centered_odd(CenteredOddPoly({1.0})), {0, 1});
  check_coeffs(from_centered_odd(CenteredOddPoly({0.0})), {0.5});
  const CenteredOddPoly s({1.7, -3.2, 0.9});
  const Poly p = from_centered_odd(s);
  const Poly sum = add(p, compose_affine(p, -1.0, 1.0));
  REQUIRE(sum.degree() >= 0);
  CHECK(sum.coeff(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k <= sum.degree(); ++k) CHECK(std::fabs(sum.coeff(k)) <= 1e-10);
  for (double x = 0; x <= 1; x += 0.01) CHECK(std::fabs(p(x) - s(x)) <= 1e-12);
  CHECK(s(0.5) == 0.5);
}

TEST_CASE("arithmetic properties on random polynomials") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1e3, 1e3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(6), b(4);
    for (auto& v : a) v = U(rng);
    for (auto& v : b) v = U(rng);
    const Poly p(a), q(b);
    const double x = U(rng) / 1e3;
    const double lhs = add(p, q)(x), rhs = p(x) + q(x);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1 + std::fabs(rhs)) * 1e3);
    const Poly d1 = derivative(mul(p, q));
    const Poly d2 = add(mul(derivative(p), q), mul(p, derivative(q)));
    REQUIRE(d1.degree() == d2.degree());
    for (int k = 0; k <= d1.degree(); ++k)
      CHECK(std::fabs(d1.coeff(k) - d2.coeff(k)) <= 1e-12 * (1 + std::fabs(d1.coeff(k))));
  }
}

TEST_CASE("sup_abs_on agrees with a dense scan") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(1 + trial % 25 + 1);
    for (auto& v : c) v = U(rng);
    const Poly p(c);
    const auto s = sup_abs_on(p, Interval(0, 1));
    double scan = 0;
    for (int i = 0; i <= 100000; ++i) scan = std::max(scan, std::fabs(p(i / 100000.0)));
    CHECK(s.value >= scan - 1e-9);
    CHECK(s.value <= scan + 1e-9);
  }
}

TEST_CASE("wide polynomials") {
  const WidePoly p{Wide(0), Wide(0), Wide(3), Wide(-2)};
  CHECK(eval(p, Wide(-1)) == Wide(5));
  const auto s = sup_abs_on(p, Interval(0, 1));
  CHECK(s.value == doctest::Approx(1.0));
}

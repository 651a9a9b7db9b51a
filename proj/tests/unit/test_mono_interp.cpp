#include <cmath>
#include <random>

#include "doctest.h"
#include "qsppoly/errors.hpp"
#include "qsppoly/mono_interp.hpp"
#include "qsppoly/realroots.hpp"
#include "qsppoly/scalar.hpp"

using namespace qsppoly;

TEST_CASE("build_nodes follows the prescribed spacing") {
  const NodeSet S = build_nodes(Poly{0, 1}, 0.5);
  REQUIRE(S.size() >= 3);
  CHECK(S[0].x == 0.0);
  CHECK(S.nodes().back().x == 1.0);
  const double delta = 0.25;
  for (std::size_t i = 1; i < S.size(); ++i) {
    const double gap = S[i].x - S[i - 1].x;
    CHECK(gap < delta);
    if (i + 1 < S.size()) CHECK(gap >= delta / 2);
    CHECK(S[i].y != S[i - 1].y);
  }
  CHECK(S[1].x >= 0.125);
  CHECK(S[1].x < 0.25);

  // delta capped at 1/2: every step lies in [0.25, 0.5).
  const NodeSet capped = build_nodes(Poly{0, 1}, 4.0);
  CHECK(capped[1].x >= 0.25);
  CHECK(capped[1].x < 0.5);
  for (std::size_t i = 1; i < capped.size(); ++i) CHECK(capped[i].x - capped[i - 1].x < 0.5);

  CHECK_THROWS_AS(build_nodes(Poly{0.3}, 0.1), Error);
  try {
    build_nodes(Poly{0.3}, 0.1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConstantPolynomial);
  }
}

TEST_CASE("guard_extend") {
  const NodeSet S({{0, 0}, {1, 1}});
  const NodeSet G = guard_extend(S, Family::P);
  CHECK(G == NodeSet({{-1, -1}, {0, 0}, {1, 1}, {2, 2}}));
  const NodeSet Q = guard_extend(NodeSet({{0, 0}, {0.5, 0.3}, {1, 0}}), Family::Q);
  CHECK(Q.nodes().front() == Node{-1, -1});
  CHECK(Q.nodes().back() == Node{2, -1});
  CHECK(Q.size() == 5);
}

TEST_CASE("node set invariants") {
  CHECK_THROWS_AS(NodeSet({{0, 0}, {0, 1}}), Error);
  CHECK_THROWS_AS(NodeSet({{0, 0}, {1, 0}}), Error);
}

TEST_CASE("monotone_interpolate small cases") {
  auto q = monotone_interpolate(NodeSet({{-1, -1}, {0, 0}, {1, 1}, {2, 2}}));
  CHECK(q.degree() == 1);
  CHECK(q.coeff(1) == doctest::Approx(1.0));
  CHECK(std::fabs(q.coeff(0)) <= 1e-12);

  q = monotone_interpolate(NodeSet({{0, 0}, {1, 1}}));
  CHECK(q.degree() == 1);

  const NodeSet S({{-1, -1}, {0, 0}, {0.5, 0.8}, {1, 1}, {2, 2}});
  q = monotone_interpolate(S);
  CHECK(q.degree() >= 3);
  for (const auto& nd : S.nodes()) CHECK(std::fabs(q(nd.x) - nd.y) <= 1e-8);
  CHECK(sign_on(derivative(q), Interval(-1, 2), false).kind == SignKind::StrictlyPositive);
}

TEST_CASE("turning data") {
  const NodeSet S({{-1, -1}, {0, 0}, {0.5, 0.3}, {1, 0}, {2, -1}});
  const Poly q = monotone_interpolate(S);
  CHECK(verify_interpolant(q, S));
  // Stays below 0 on [-1,0) and (1,2].
  CHECK(sign_on(q, Interval(-1, 0), true).kind == SignKind::StrictlyNegative);
  CHECK(sign_on(q, Interval(1, 2), true).kind == SignKind::StrictlyNegative);
}

TEST_CASE("hinted interpolation tracks the hint") {
  // Nodes of x^2 on [0,1] with guards; the hint pulls q' toward 2x.
  const NodeSet S = guard_extend(NodeSet({{0, 0}, {0.5, 0.25}, {1, 1}}), Family::P);
  InterpOptions opt;
  opt.hint_derivative = [](double x) { return 2 * x; };
  opt.min_degree = 6;
  const Poly q = monotone_interpolate(S, 1e-8, opt);
  double err = 0;
  for (double x = 0; x <= 1; x += 0.01) err = std::max(err, std::fabs(q(x) - x * x));
  CHECK(err < 0.02);
  // q > 1 on (1,2] and q < 0 on [-1,0).
  CHECK(sign_on(sub(q, Poly{1.0}), Interval(1, 2), true).kind == SignKind::StrictlyPositive);
  CHECK(sign_on(q, Interval(-1, 0), true).kind == SignKind::StrictlyNegative);
}

namespace {

// x gaps within a factor two of each other, as build_nodes produces.
NodeSet random_nodes(std::mt19937& rng, int n, bool monotone) {
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<double> xs{0};
  for (int i = 1; i < n; ++i) xs.push_back(xs.back() + 1 + U(rng));
  std::vector<Node> v;
  double y = U(rng);
  for (int i = 0; i < n; ++i) {
    v.push_back({xs[i] / xs.back(), y});
    double ny;
    if (monotone) {
      ny = y + 0.05 + U(rng);
    } else {
      do ny = U(rng); while (std::fabs(ny - y) < 0.05);
    }
    y = ny;
  }
  return NodeSet(v);
}

// Dense independent check: values at nodes, monotone between them.
void check_independently(const Poly& q, const NodeSet& S) {
  const WidePoly qw = poly_cast<Wide>(q);
  for (const auto& nd : S.nodes()) CHECK(std::fabs(scalar::to_double(qw(Wide(nd.x))) - nd.y) <= 1e-8);
  for (std::size_t i = 1; i < S.size(); ++i) {
    const double a = S[i - 1].x, b = S[i].x;
    const double s = S[i].y > S[i - 1].y ? 1 : -1;
    Wide prev = qw(Wide(a));
    for (int j = 1; j <= 400; ++j) {
      const Wide cur = qw(Wide(a + (b - a) * j / 400));
      CHECK(s * scalar::to_double(cur - prev) > -1e-12);
      prev = cur;
    }
  }
}

}  // namespace

TEST_CASE("random monotone data always succeeds") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> count(2, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const NodeSet S = random_nodes(rng, count(rng), true);
    const Poly q = monotone_interpolate(S);
    CHECK(verify_interpolant(q, S));
    check_independently(q, S);
  }
}

TEST_CASE("random zig-zag data: results are correct, failures are reported") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> count(3, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const NodeSet S = random_nodes(rng, count(rng), false);
    try {
      const Poly q = monotone_interpolate(S);
      check_independently(q, S);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InfeasibleAtMaxDegree);
    }
  }
}

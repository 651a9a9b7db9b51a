#include "qsppoly/equiripple.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsppoly/membership.hpp"
#include "qsppoly/realroots.hpp"

namespace qsppoly {

ZeroConfig::ZeroConfig(std::vector<double> zeros) : a(std::move(zeros)) {
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one zero");
  double prev = 0.0;
  for (double v : a) {
    if (!(v > prev && v < 0.5)) {
      throw Error(ErrorCode::InvalidArgument,
                  "zeros must satisfy 0 < a_1 < ... < a_ell < 1/2");
    }
    prev = v;
  }
}

ZeroConfig ZeroConfig::equispaced(int ell, double a_ell) {
  if (ell < 1) throw Error(ErrorCode::InvalidArgument, "ell must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(ell));
  for (int i = 1; i <= ell; ++i) a[static_cast<std::size_t>(i - 1)] = i * a_ell / ell;
  a.back() = a_ell;
  return ZeroConfig(std::move(a));
}

RippleBuild build_R_poly(const ZeroConfig& cfg) {
  const int ell = cfg.ell();
  const int n = 2 * ell + 1;
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd rhs(n);
  // Rows 0..ell: p(a_i) = 0, i.e. sum_k c_{2k+1} z^{2k+1} = -1/2.
  // Rows ell+1..2ell: p'(a_i) = 0.
  for (int i = 0; i <= ell; ++i) {
    const double z = cfg.at(i) - 0.5;
    double zp = z;  // z^{2k+1}
    for (int k = 0; k < n; ++k, zp *= z * z) M(i, k) = zp;
    rhs(i) = -0.5;
  }
  for (int i = 1; i <= ell; ++i) {
    const double z = cfg.at(i) - 0.5;
    double zp = 1.0;  // z^{2k}
    for (int k = 0; k < n; ++k, zp *= z * z) M(ell + i, k) = (2 * k + 1) * zp;
    rhs(ell + i) = 0.0;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rc = lu.rcond();
  const double cond = rc > 0 ? 1.0 / rc : INFINITY;
  if (!(cond <= kMaxCondition)) {
    throw Error(ErrorCode::IllConditioned,
                "condition estimate " + std::to_string(cond) + " exceeds 1e12 for ell = " +
                    std::to_string(ell));
  }
  Eigen::VectorXd c = lu.solve(rhs);
  // One step of iterative refinement, residual accumulated in long double.
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    long double s = rhs(i);
    for (int k = 0; k < n; ++k) s -= static_cast<long double>(M(i, k)) * c(k);
    r(i) = static_cast<double>(s);
  }
  c += lu.solve(r);
  return {CenteredOddPoly(std::vector<double>(c.data(), c.data() + n)), cond};
}

PeakData peaks(const CenteredOddPoly& p, const ZeroConfig& cfg) {
  const Poly dp = p.derivative_in_centered_variable();
  PeakData out;
  for (int i = 1; i <= cfg.ell(); ++i) {
    const double lo = cfg.at(i - 1), hi = cfg.at(i);
    // p' vanishes at the double zeros a_i themselves; only interior roots count.
    const double guard = 1e-7 * (hi - lo);
    std::vector<double> inner;
    for (double z : roots_in(dp, Interval(lo - 0.5, hi - 0.5), 1e-14)) {
      const double x = z + 0.5;
      if (x > lo + guard && x < hi - guard) inner.push_back(x);
    }
    if (inner.size() != 1) {
      throw Error(ErrorCode::StructureViolation,
                  std::to_string(inner.size()) + " critical points in (a_" +
                      std::to_string(i - 1) + ", a_" + std::to_string(i) + ")");
    }
    out.b.push_back(inner.front());
    out.heights.push_back(p(inner.front()));
  }
  return out;
}

PeakBounds peak_bounds(const ZeroConfig& cfg, int i) {
  const int ell = cfg.ell();
  if (i < 1 || i > ell) throw Error(ErrorCode::InvalidArgument, "peak index out of range");
  const double w = cfg.at(i) - cfg.at(i - 1);
  const double gap = 0.5 - cfg.at(ell);
  // C(4ell, 2i-1) via lgamma; exact enough for the ell this family supports.
  const double binom = std::exp(std::lgamma(4.0 * ell + 1) - std::lgamma(2.0 * i) -
                                std::lgamma(4.0 * ell - 2 * i + 2));
  PeakBounds b;
  b.lower = std::pow(w, 4 * ell - 1) / (4.0 * (4 * ell + 1) * std::round(binom) * gap);
  b.upper = std::ldexp(1.0, 4 * ell) * w / std::pow(gap, 4 * ell + 1);
  return b;
}

namespace {

struct Eval {
  CenteredOddPoly poly;
  PeakData peaks;
  double condition = 0.0;
};

Eval evaluate(const ZeroConfig& cfg) {
  auto built = build_R_poly(cfg);
  auto pk = peaks(built.poly, cfg);
  return {std::move(built.poly), std::move(pk), built.condition};
}

bool strictly_ordered(const std::vector<double>& a) {
  double prev = 0.0;
  for (double v : a) {
    if (!(v > prev && v < 0.5)) return false;
    prev = v;
  }
  return true;
}

double relative_spread(const std::vector<double>& h) {
  const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  const double mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
  return (*hi - *lo) / mean;
}

}  // namespace

ZeroConfig iterate(const ZeroConfig& cfg, double kappa) {
  if (!(kappa > 0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  const Eval e0 = evaluate(cfg);
  const auto& h0 = e0.peaks.heights;
  // 1-based peak indices.
  const int M = static_cast<int>(std::max_element(h0.begin(), h0.end()) - h0.begin()) + 1;
  const int m = static_cast<int>(std::min_element(h0.begin(), h0.end()) - h0.begin()) + 1;
  if (m == M || h0[M - 1] == h0[m - 1]) return cfg;

  ZeroConfig a = cfg;
  double s = std::min((a.at(m) - a.at(m - 1)) / 4, (a.at(M) - a.at(M - 1)) / 4);
  if (e0.peaks.b[M - 1] < e0.peaks.b[m - 1]) s = -s;
  const int lo = std::min(m, M), hi = std::max(m, M);

  while (std::fabs(s) >= kappa) {
    std::vector<double> trial = a.a;
    for (int j = lo; j < hi; ++j) trial[static_cast<std::size_t>(j - 1)] += s;
    bool accept = false;
    if (strictly_ordered(trial)) {
      try {
        const Eval e = evaluate(ZeroConfig(trial));
        accept = e.peaks.heights[m - 1] <= e.peaks.heights[M - 1];
      } catch (const Error& err) {
        // A trial whose peaks lose their structure is an overshoot; a
        // conditioning failure is the caller's to see.
        if (err.code() != ErrorCode::StructureViolation) throw;
      }
    }
    if (accept) {
      a.a = std::move(trial);
    } else if (std::fabs(s) == kappa) {
      s = 0;
    } else {
      s = std::copysign(std::max(std::fabs(s / 2), kappa), s);
    }
  }
  return a;
}

double default_spread_tol(const ZeroConfig& cfg, double kappa) {
  return 10 * kappa / cfg.at(cfg.ell());
}

EquiRippleResult equiripple_solve(const ZeroConfig& cfg0, double kappa, int max_rounds) {
  if (!(kappa > 0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  if (max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
  EquiRippleResult res;
  res.kappa = kappa;
  res.spread_tol = default_spread_tol(cfg0, kappa);
  ZeroConfig a = cfg0;
  int rounds = 0;
  bool fixpoint = false;
  while (rounds < max_rounds) {
    ZeroConfig next = iterate(a, kappa);
    ++rounds;
    fixpoint = next.a == a.a;
    a = std::move(next);
    if (fixpoint) break;
  }

  const Eval e = evaluate(a);
  res.config = a;
  res.poly = e.poly;
  res.peaks = e.peaks;
  res.condition = e.condition;
  res.rounds = rounds;
  const auto& h = e.peaks.heights;
  res.delta = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
  res.spread = relative_spread(h);
  res.converged = fixpoint;
  res.within_spread_tol = res.spread <= res.spread_tol;
  res.in_P = res.delta <= 1.0 &&
             check_family(from_centered_odd(e.poly), Family::P).verdict != Verdict::NotMember;
  if (!fixpoint) {
    throw NotConvergedError("no fixpoint after " + std::to_string(max_rounds) +
                                " rounds; relative spread " + std::to_string(res.spread),
                            res);
  }
  return res;
}

GapReport gap_report(const EquiRippleResult& res, double eps) {
  if (!(eps > 0 && eps < 0.5)) throw Error(ErrorCode::InvalidArgument, "need 0 < eps < 1/2");
  const double a_ell = res.config.at(res.config.ell());
  if (!(a_ell < 0.5 - eps)) {
    throw Error(ErrorCode::GapInsideRippleRegion,
                "a_ell = " + std::to_string(a_ell) + " is not below 1/2 - eps = " +
                    std::to_string(0.5 - eps));
  }
  GapReport g;
  g.eps = eps;
  g.p_at_gap = res.poly(0.5 - eps);
  g.delta = res.delta;
  g.residual = g.p_at_gap - g.delta;
  return g;
}

}  // namespace qsppoly

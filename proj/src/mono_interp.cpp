#include "qsppoly/mono_interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nnls.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/realroots.hpp"
#include "qsppoly/scalar.hpp"

namespace qsppoly {

NodeSet::NodeSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::InvalidArgument, "node set is empty");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i].x > nodes_[i - 1].x)) {
      throw Error(ErrorCode::InvalidArgument, "node x values must be strictly increasing");
    }
    if (!(std::fabs(nodes_[i].y - nodes_[i - 1].y) >= 1e-12)) {
      throw Error(ErrorCode::InvalidArgument, "consecutive node values must differ");
    }
  }
}

NodeSet build_nodes(const std::function<double(double)>& f, double slope_bound, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (!(slope_bound > 0)) throw Error(ErrorCode::ConstantPolynomial, "function is constant on [0,1]");
  const double delta = std::min(0.5, 0.5 * eps / slope_bound);

  std::vector<Node> out{{0.0, f(0.0)}};
  double x = 0.0;
  while (1.0 - x >= delta) {
    const double y = out.back().y;
    bool placed = false;
    for (int j = 0; j < 32 && !placed; ++j) {
      const double c = x + 0.5 * delta + j * delta / 64;
      const double v = f(c);
      if (std::fabs(v - y) >= 1e-12) {
        out.push_back({c, v});
        x = c;
        placed = true;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::StructureViolation,
                  "no value change in [" + std::to_string(x + 0.5 * delta) + ", " +
                      std::to_string(x + delta) + ")");
    }
  }
  const double y1 = f(1.0);
  if (std::fabs(y1 - out.back().y) < 1e-12 && out.size() > 1) out.pop_back();
  out.push_back({1.0, y1});
  return NodeSet(std::move(out));
}

NodeSet build_nodes(const Poly& p, double eps) {
  if (p.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "polynomial is constant");
  const double slope = sup_abs_on(derivative(p), Interval(0.0, 1.0)).value;
  return build_nodes([&p](double x) { return p(x); }, slope, eps);
}

NodeSet guard_extend(const NodeSet& S, Family fam) {
  if (S.size() < 2 || S.nodes().front().x != 0.0 || S.nodes().back().x != 1.0) {
    throw Error(ErrorCode::PreconditionFailed, "guard_extend needs nodes covering [0,1]");
  }
  std::vector<Node> v;
  v.reserve(S.size() + 2);
  v.push_back({-1.0, -1.0});
  v.insert(v.end(), S.nodes().begin(), S.nodes().end());
  v.push_back({2.0, is_p_like(fam) ? 2.0 : -1.0});
  return NodeSet(std::move(v));
}

// The coefficients are taken as exact: the check is about the polynomial,
// not about the roundoff of evaluating it in double.
bool verify_interpolant(const Poly& q, const NodeSet& S, double tol) {
  const WidePoly qw = poly_cast<Wide>(q);
  for (const auto& nd : S.nodes()) {
    if (!(scalar::abs(qw(Wide(nd.x)) - Wide(nd.y)) <= Wide(tol))) return false;
  }
  const WidePoly dq = derivative(qw);
  for (std::size_t i = 1; i < S.size(); ++i) {
    const bool up = S[i].y > S[i - 1].y;
    const auto sv = sign_on(dq, Interval(S[i - 1].x, S[i].x), true, tol);
    if (sv.kind != (up ? SignKind::StrictlyPositive : SignKind::StrictlyNegative)) return false;
  }
  return true;
}

namespace {

constexpr double kHintRidge = 1e-6;
constexpr int kHintSamples = 101;
constexpr double kFeasibleResidual = 1e-9;
// w is kept above a fraction of the smallest average it needs on any
// interval; larger fractions are tried first.
constexpr double kMarginFractions[] = {0.5, 0.2, 0.05, 1e-2, 1e-3};

// T_0..T_k at s = 2t - 1.
void chebyshev_row(int k, double t, double* out) {
  const double s = 2 * t - 1;
  out[0] = 1;
  if (k >= 1) out[1] = s;
  for (int j = 2; j <= k; ++j) out[j] = 2 * s * out[j - 1] - out[j - 2];
}

double pi_at(double t, const std::vector<double>& turns, double sigma) {
  double v = sigma;
  for (double tj : turns) v *= t - tj;
  return v;
}

struct Problem {
  const NodeSet& S;
  double x0, span;
  std::vector<double> t;      // nodes mapped to [0,1]
  std::vector<double> turns;  // turning nodes in t
  double sigma;
};

WidePoly chebyshev_series(const std::vector<Wide>& mu) {
  WidePoly ws;
  WidePoly tm2, tm1 = WidePoly::constant(Wide(1)), s{Wide(0), Wide(1)};
  for (std::size_t j = 0; j < mu.size(); ++j) {
    WidePoly tj = j == 0 ? tm1 : j == 1 ? s : sub(scale(mul(s, tm1), Wide(2)), tm2);
    ws = add(ws, scale(tj, mu[j]));
    if (j >= 1) {
      tm2 = tm1;
      tm1 = tj;
    }
  }
  return compose_affine(ws, Wide(2), Wide(-1));
}

// q in x from the Chebyshev coefficients of w, without the constant term.
WidePoly q_from_w(const Problem& pr, const std::vector<Wide>& mu) {
  const WidePoly w = chebyshev_series(mu);
  WidePoly pi = WidePoly::constant(Wide(pr.sigma));
  for (double tj : pr.turns) pi = mul(pi, WidePoly{Wide(-tj), Wide(1)});
  const WidePoly qt = scale(antiderivative(mul(w, pi)), Wide(pr.span));
  const Wide span(pr.span);
  return compose_affine(qt, Wide(1) / span, Wide(-pr.x0) / span);
}

// Chebyshev coefficients of w at degree k with w >= margin at `samples`
// points; empty when infeasible.
std::vector<double> solve_weights(const Problem& pr, int k, int samples, double fraction,
                                  const InterpOptions& opt) {
  const auto& S = pr.S;
  const int N = static_cast<int>(S.size()) - 1;
  const int ncol = k + 1;
  std::vector<double> row(static_cast<std::size_t>(ncol));

  // Interpolation rows: span * ∫ T_j π over each interval, divided by Δy.
  const int m = (k + static_cast<int>(pr.turns.size())) / 2 + 2;
  Eigen::VectorXd gx, gw;
  detail::gauss_legendre(m, gx, gw);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, ncol);
  double need = INFINITY;
  for (int i = 1; i <= N; ++i) {
    const double a = pr.t[i - 1], b = pr.t[i];
    const double dy = S[i].y - S[i - 1].y;
    double pabs = 0;
    for (int g = 0; g < m; ++g) {
      const double tt = 0.5 * (a + b) + 0.5 * (b - a) * gx(g);
      const double pv = pi_at(tt, pr.turns, pr.sigma);
      pabs += gw(g) * std::fabs(pv);
      chebyshev_row(k, tt, row.data());
      for (int j = 0; j < ncol; ++j) A(i - 1, j) += gw(g) * row[j] * pv;
    }
    A.row(i - 1) *= pr.span * 0.5 * (b - a) / dy;
    need = std::min(need, std::fabs(dy) / (pr.span * 0.5 * (b - a) * pabs));
  }
  const double margin = fraction * need;

  // Positivity at Chebyshev points.
  Eigen::MatrixXd G(samples, ncol);
  for (int s = 0; s < samples; ++s) {
    const double tt = 0.5 - 0.5 * std::cos(M_PI * (s + 0.5) / samples);
    chebyshev_row(k, tt, row.data());
    for (int j = 0; j < ncol; ++j) G(s, j) = row[j];
  }
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(samples, margin);

  // Objective: smallest coefficients, or closest to the hinted derivative.
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
  if (opt.hint_derivative) {
    const double lo = std::max(opt.hint_lo, S[0].x), hi = std::min(opt.hint_hi, S[N].x);
    std::vector<double> ts, ds;
    double scale = 0;
    for (int s = 0; s < kHintSamples; ++s) {
      const double x = lo + (hi - lo) * s / (kHintSamples - 1);
      ts.push_back((x - pr.x0) / pr.span);
      ds.push_back(opt.hint_derivative(x));
      scale = std::max(scale, std::fabs(ds.back()));
    }
    if (scale == 0) scale = 1;
    E = Eigen::MatrixXd::Zero(kHintSamples + ncol, ncol);
    f = Eigen::VectorXd::Zero(kHintSamples + ncol);
    for (int s = 0; s < kHintSamples; ++s) {
      const double pv = pi_at(ts[s], pr.turns, pr.sigma);
      chebyshev_row(k, ts[s], row.data());
      for (int j = 0; j < ncol; ++j) E(s, j) = row[j] * pv / scale;
      f(s) = ds[s] / scale;
    }
    for (int j = 0; j < ncol; ++j) E(kHintSamples + j, j) = kHintRidge;
  } else {
    E = Eigen::MatrixXd::Identity(ncol, ncol);
    f = Eigen::VectorXd::Zero(ncol);
  }

  // The interpolation rows are equalities: mu = mu_p + Z v with A Z = 0.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(N);
  const Eigen::VectorXd mu_p = A.completeOrthogonalDecomposition().solve(ones);
  std::optional<Eigen::VectorXd> mu = mu_p;
  if (ncol <= N) {
    // No freedom left.
    if ((G * mu_p - h).minCoeff() < 0) return {};
  } else {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A.transpose());
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd Z = Q.rightCols(ncol - N);
    const auto v = detail::lsi(E * Z, f - E * mu_p, G * Z, h - G * mu_p);
    if (!v) return {};
    *mu += Z * *v;
  }
  // One correction step on the interpolation rows.
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(N) - A * *mu;
  *mu += A.completeOrthogonalDecomposition().solve(r);
  const double res = (Eigen::VectorXd::Ones(N) - A * *mu).cwiseAbs().maxCoeff();
  if (!(res <= kFeasibleResidual)) return {};
  return {mu->data(), mu->data() + mu->size()};
}

// Newton form through the nodes, expanded to monomials.
WidePoly interpolate_wide(const std::vector<Wide>& x, std::vector<Wide> d) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - j]);
  WidePoly p = WidePoly::constant(d[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    p = add(mul(p, WidePoly{Wide(-x[i]), Wide(1)}), WidePoly::constant(d[i]));
  return p;
}

Wide max_residual(const Poly& q, const NodeSet& S, std::vector<Wide>* r = nullptr) {
  const WidePoly qw = poly_cast<Wide>(q);
  Wide worst(0);
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Wide e = Wide(S[i].y) - qw(Wide(S[i].x));
    if (r) (*r)[i] = e;
    worst = std::max(worst, scalar::abs(e));
  }
  return worst;
}

Poly assemble(const Problem& pr, const std::vector<double>& mu) {
  const auto& S = pr.S;
  WidePoly qw = q_from_w(pr, std::vector<Wide>(mu.begin(), mu.end()));
  qw = add(qw, WidePoly::constant(Wide(S[0].y) - qw(Wide(pr.x0))));
  Poly best = poly_cast<double>(qw);

  // Rounding the coefficients moves the node values; push the residual into
  // a low-degree correction and round again.
  std::vector<Wide> xs, r(S.size());
  for (const auto& nd : S.nodes()) xs.push_back(Wide(nd.x));
  Wide best_res = max_residual(best, S, &r);
  Poly cur = best;
  for (int it = 0; it < 4 && best_res > Wide(1e-13); ++it) {
    cur = poly_cast<double>(add(poly_cast<Wide>(cur), interpolate_wide(xs, r)));
    const Wide res = max_residual(cur, S, &r);
    if (res < best_res) {
      best_res = res;
      best = cur;
    }
  }
  return best;
}

}  // namespace

Poly monotone_interpolate(const NodeSet& S, double tol, const InterpOptions& opt) {
  if (S.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two nodes");
  const int N = static_cast<int>(S.size()) - 1;
  Problem pr{S, S[0].x, S[N].x - S[0].x, {}, {}, 1.0};
  for (const auto& nd : S.nodes()) pr.t.push_back((nd.x - pr.x0) / pr.span);
  auto dir = [&](int i) { return S[i].y > S[i - 1].y ? 1 : -1; };
  for (int i = 1; i < N; ++i)
    if (dir(i) != dir(i + 1)) pr.turns.push_back(pr.t[i]);
  pr.sigma = dir(1) * ((pr.turns.size() % 2 == 0) ? 1.0 : -1.0);

  const int nturn = static_cast<int>(pr.turns.size());
  const int cap = opt.max_degree > 0 ? opt.max_degree : 4 * static_cast<int>(S.size()) + 20;
  const int k0 = std::max(0, opt.min_degree - 1 - nturn);
  for (int k = k0; 1 + nturn + k <= cap; ++k) {
    // Sampled positivity can miss a dip between samples; densify before
    // lowering the margin, and lower the margin before raising the degree.
    for (double fraction : kMarginFractions) {
      for (int samples = 4 * (k + 1) + 20, pass = 0; pass < 3; samples *= 2, ++pass) {
        const auto mu = solve_weights(pr, k, samples, fraction, opt);
        if (mu.empty()) break;
        Poly q = assemble(pr, mu);
        if (verify_interpolant(q, S, tol)) return q;
      }
    }
  }
  throw Error(ErrorCode::InfeasibleAtMaxDegree,
              "no monotone interpolant up to degree " + std::to_string(cap) + " for " +
                  std::to_string(S.size()) + " nodes");
}

}  // namespace qsppoly

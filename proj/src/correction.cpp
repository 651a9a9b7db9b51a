#include "qsppoly/correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "qsppoly/bernstein.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/mono_interp.hpp"
#include "qsppoly/realroots.hpp"
#include "qsppoly/scalar.hpp"

namespace qsppoly {

CorrectionParams::CorrectionParams(int a, int b) : alpha(a), beta(b) {
  if (a < 1 || b < 1) {
    throw Error(ErrorCode::InvalidArgument, "alpha and beta must be >= 1, got (" +
                                                std::to_string(a) + ", " + std::to_string(b) + ")");
  }
}

WidePoly r_poly_wide(const CorrectionParams& cp) {
  std::vector<Wide> c(static_cast<std::size_t>(cp.degree()) + 1, Wide(0));
  Wide binom(1);
  for (int k = 0; k <= cp.beta; ++k) {
    c[static_cast<std::size_t>(2 * cp.alpha + 1 + k)] = (k % 2 == 0) ? binom : Wide(-binom);
    binom = binom * Wide(cp.beta - k) / Wide(k + 1);
  }
  return WidePoly(std::move(c));
}

Poly r_poly(const CorrectionParams& cp) { return poly_cast<double>(r_poly_wide(cp)); }

double r_sup(const CorrectionParams& cp) {
  const double a = 2.0 * cp.alpha + 1, b = cp.beta, g = b / a;
  return std::exp(-a * std::log1p(g) - b * std::log1p(1 / g));
}

double r_argmax(const CorrectionParams& cp) {
  return 1.0 / (1.0 + static_cast<double>(cp.beta) / (2.0 * cp.alpha + 1));
}

const char* to_string(TailVariant v) noexcept {
  switch (v) {
    case TailVariant::PositiveBeyond2: return "PositiveBeyond2";
    case TailVariant::NegativeBeyond2: return "NegativeBeyond2";
    case TailVariant::NegativeBelowMinus1: return "NegativeBelowMinus1";
  }
  return "?";
}

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::Even: return "Even";
    case Parity::Odd: return "Odd";
    case Parity::Any: return "Any";
  }
  return "?";
}

const char* to_string(CorrectionMode m) noexcept {
  return m == CorrectionMode::ProofFaithful ? "ProofFaithful" : "MinimalSearch";
}

CorrectionMode correction_mode_from_string(const std::string& s) {
  if (s == "ProofFaithful" || s == "proof") return CorrectionMode::ProofFaithful;
  if (s == "MinimalSearch" || s == "minimal") return CorrectionMode::MinimalSearch;
  throw Error(ErrorCode::InvalidArgument, "unknown correction mode '" + s + "'");
}

namespace {

bool parity_ok(int b, Parity p) {
  return p == Parity::Any || (p == Parity::Even) == (b % 2 == 0);
}

// Strict sign of g on [lo, +inf) or (-inf, hi] via root isolation up to a
// root bound and the leading term beyond it.
bool tail_sign_holds(const WidePoly& g, bool right, double from, int sign) {
  if (g.is_zero()) return false;
  if (g.degree() == 0) return scalar::sign(g.coeff(0)) == sign;
  const double B = std::max(std::fabs(from), scalar::to_double(root_bound(g))) * 1.01 + 1;
  const Interval I = right ? Interval(from, B) : Interval(-B, from);
  const auto sv = sign_on(g, I, false);
  const SignKind want = sign > 0 ? SignKind::StrictlyPositive : SignKind::StrictlyNegative;
  if (sv.kind != want) return false;
  int lead = scalar::sign(g.leading());
  if (!right && g.degree() % 2 == 1) lead = -lead;
  return lead == sign;
}

double max_on(const Poly& p, double lo, double hi, double* where = nullptr) {
  double best = p(lo), at = lo;
  auto consider = [&](double x) {
    const double v = p(x);
    if (v > best) {
      best = v;
      at = x;
    }
  };
  consider(hi);
  const Poly dp = derivative(p);
  if (!dp.is_zero() && hi > lo)
    for (double r : roots_in(dp, Interval(lo, hi))) consider(r);
  if (where) *where = at;
  return best;
}

double min_on(const Poly& p, double lo, double hi) { return -max_on(scale(p, -1.0), lo, hi); }

CorrectionParams lowest_degree_below(double bound, Parity parity) {
  CorrectionParams best;
  int best_deg = std::numeric_limits<int>::max();
  for (int a = 1; a <= 400; ++a) {
    if (2 * a + 2 >= best_deg) break;
    for (int b = 1; 2 * a + 1 + b < best_deg; ++b) {
      if (!parity_ok(b, parity)) continue;
      const CorrectionParams cp(a, b);
      if (r_sup(cp) < bound) {
        best = cp;
        best_deg = cp.degree();
        break;
      }
    }
  }
  if (best_deg == std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::BetaOverflow, "no r_{a,b} with sup below " + std::to_string(bound));
  }
  return best;
}

constexpr int kSearchAlphaMax = 40;
constexpr int kSearchBetaMax = 400;
// Largest r degree whose binomials stay exact in the wide type.
constexpr int kWideExactDegree = 240;
constexpr int kBetaOverflow = 1000000;
constexpr std::size_t kMaxPipelineNodes = 24;
constexpr int kSubsetBernsteinMax = 30;

}  // namespace

CorrectionParams select_tail_params(const Poly& h, TailVariant variant, Parity parity) {
  const int n = std::max(h.degree(), 0);
  const WidePoly hw = poly_cast<Wide>(h);
  const bool beyond2 = variant != TailVariant::NegativeBelowMinus1;
  if (variant == TailVariant::PositiveBeyond2 && parity == Parity::Odd) {
    throw Error(ErrorCode::InvalidArgument, "PositiveBeyond2 needs an even beta");
  }
  if (variant == TailVariant::NegativeBeyond2 && parity == Parity::Even) {
    throw Error(ErrorCode::InvalidArgument, "NegativeBeyond2 needs an odd beta");
  }
  if (variant == TailVariant::PositiveBeyond2) parity = Parity::Even;
  if (variant == TailVariant::NegativeBeyond2) parity = Parity::Odd;

  Wide K(0);
  for (const auto& c : (beyond2 ? compose_affine(hw, Wide(1), Wide(1)) : hw).coeffs())
    K += scalar::abs(c);
  if (K == Wide(0)) K = Wide(1);

  int alpha = 1, beta = 1;
  if (beyond2) {
    beta = n + 1;
    if (!parity_ok(beta, parity)) ++beta;
    while (scalar::pow(Wide(2), Wide(2 * alpha + 1)) <= K) ++alpha;
  } else {
    alpha = n / 2 + 1;
    while (scalar::pow(Wide(2), Wide(beta)) <= K) ++beta;
    if (!parity_ok(beta, parity)) ++beta;
  }
  const CorrectionParams cp(alpha, beta);

  const WidePoly g = add(r_poly_wide(cp), hw);
  const bool ok = variant == TailVariant::PositiveBeyond2   ? tail_sign_holds(g, true, 2.0, +1)
                  : variant == TailVariant::NegativeBeyond2 ? tail_sign_holds(g, true, 2.0, -1)
                                                            : tail_sign_holds(g, false, -1.0, -1);
  if (!ok) {
    throw Error(ErrorCode::StructureViolation,
                std::string("tail recipe failed its sign check for ") + to_string(variant));
  }
  return cp;
}

Poly pin_endpoints(const Poly& q, Family fam) {
  std::vector<double> c = q.coeffs();
  if (c.size() < 2) c.resize(2, 0.0);
  c[0] = 0.0;
  const Wide target(is_p_like(fam) ? 1 : 0);
  Wide rest(0);
  for (std::size_t k = 2; k < c.size(); ++k) rest += Wide(c[k]);
  c[1] = scalar::to_double(target - rest);
  // Rounding c1 leaves a residual of a few ulps; let the coefficients absorb
  // it, smallest first (where it is most likely exactly representable), so the
  // coefficient sum is the target exactly.
  std::vector<std::size_t> order;
  for (std::size_t k = 1; k < c.size(); ++k) order.push_back(k);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return std::fabs(c[a]) < std::fabs(c[b]); });
  for (int pass = 0; pass < 3; ++pass) {
    for (std::size_t k : order) {
      Wide sum(0);
      for (std::size_t j = 1; j < c.size(); ++j) sum += Wide(c[j]);
      const Wide res = target - sum;
      if (res == Wide(0)) return Poly(std::move(c));
      c[k] = scalar::to_double(Wide(c[k]) + res);
    }
  }
  return Poly(std::move(c));
}

std::string step2_structure_violation(const Poly& q, Family fam, double tol) {
  const bool p_like = is_p_like(fam);
  if (!(std::fabs(q(0.0)) <= tol)) return "q(0) != 0";
  if (!(std::fabs(q(1.0) - (p_like ? 1.0 : 0.0)) <= tol)) return "q(1) has the wrong value";
  if (sign_on(q, Interval(0, 1), true).kind != SignKind::StrictlyPositive)
    return "q is not positive on (0,1)";
  if (sign_on(sub(Poly{1.0}, q), Interval(0, 1), true).kind != SignKind::StrictlyPositive)
    return "q is not below 1 on (0,1)";
  if (sign_on(q, Interval(-1, 0), true).kind != SignKind::StrictlyNegative)
    return "q is not negative on [-1,0)";
  if (p_like) {
    if (sign_on(sub(q, Poly{1.0}), Interval(1, 2), true).kind != SignKind::StrictlyPositive)
      return "q is not above 1 on (1,2]";
  } else if (sign_on(q, Interval(1, 2), true).kind != SignKind::StrictlyNegative) {
    return "q is not negative on (1,2]";
  }
  return {};
}

namespace {

CorrectionResult minimal_search(const Poly& q, Family fam, double eps, PipelineTrace trace) {
  const Parity parity = is_p_like(fam) ? Parity::Even : Parity::Odd;
  std::vector<CorrectionParams> cands;
  for (int a = 1; a <= kSearchAlphaMax; ++a)
    for (int b = 1; b <= kSearchBetaMax; ++b)
      if (parity_ok(b, parity) && r_sup(CorrectionParams(a, b)) < eps) cands.emplace_back(a, b);
  std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return r_sup(x) < r_sup(y);
  });

  for (const auto& cp : cands) {
    ++trace.candidates_tried;
    const WidePoly exact = add(poly_cast<Wide>(q), r_poly_wide(cp));
    const Poly u = pin_endpoints(poly_cast<double>(exact), fam);
    if (check_family(u, fam).verdict != Verdict::Member) continue;
    // The double coefficients are the polynomial we hand out; certify them
    // without evaluation roundoff.
    const auto exact_report = check_family(poly_cast<Wide>(u), fam);
    if (exact_report.verdict != Verdict::Member) continue;
    trace.corrected = true;
    trace.final_params = cp;
    trace.sup_r = r_sup(cp);
    trace.verdict = Verdict::Member;
    trace.exact_verdict = exact_report.verdict;
    return {u, exact, trace};
  }
  throw Error(ErrorCode::ConvergenceBudgetExceeded,
              "no r_{a,b} with a <= " + std::to_string(kSearchAlphaMax) + ", b <= " +
                  std::to_string(kSearchBetaMax) + " and sup r < " + std::to_string(eps) +
                  " makes q a member");
}

// Multiplicity of the root of s at 1 and the cofactor s~ with s = (1-x)^m s~.
int split_root_at_one(const Poly& s, Poly* cofactor) {
  Poly cur = s;
  int m = 0;
  while (cur.degree() >= 1) {
    double scale_sum = 1;
    for (double c : cur.coeffs()) scale_sum += std::fabs(c);
    double rem = 0;
    const Poly next = divide_linear(cur, 1.0, &rem);
    if (!(std::fabs(rem) <= 1e-9 * scale_sum)) break;
    cur = scale(next, -1.0);  // (x - 1) t = (1 - x)(-t)
    ++m;
  }
  *cofactor = cur;
  return m;
}

CorrectionResult proof_faithful(const Poly& q, Family fam, double eps, PipelineTrace trace) {
  const bool p_like = is_p_like(fam);
  std::array<CorrectionParams, 3> tails;
  int alpha = 0;
  long long beta = 0;

  if (p_like) {
    // Monotone tail [1 - mu, 1]: from the largest critical point below 1.
    double tail_start = 0;
    const Poly dq = derivative(q);
    for (double r : roots_in(dq, Interval(0, 1))) {
      if (r < 1 - 1e-12) tail_start = std::max(tail_start, r);
    }
    trace.eta = max_on(q, 0, tail_start);
    trace.eta_prime = std::max(trace.eta, 1 - eps);
    const double level = (1 + trace.eta_prime) / 2;
    double lo = tail_start, hi = 1;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (q(mid) < level ? lo : hi) = mid;
    }
    trace.mu_prime = hi;

    Poly st;
    trace.m = split_root_at_one(sub(Poly{1.0}, q), &st);
    const double smin = min_on(st, trace.mu_prime, 1);
    if (!(smin > 0)) {
      throw Error(ErrorCode::PreconditionFailed, "1 - q is not positive on [mu', 1)");
    }
    trace.K = smin / 2;
    int b0 = 2;
    while (std::pow(1 - trace.mu_prime, b0) >= trace.K) {
      b0 += 2;
      if (b0 > kBetaOverflow) break;
    }
    trace.beta0 = b0;

    tails[0] = lowest_degree_below(1 - q(trace.mu_prime), Parity::Even);
    tails[1] = select_tail_params(sub(q, Poly{q(2.0)}), TailVariant::PositiveBeyond2, Parity::Even);
    tails[2] = select_tail_params(sub(q, Poly{q(-1.0)}), TailVariant::NegativeBelowMinus1, Parity::Even);
    beta = 2LL * trace.m + trace.beta0;
  } else {
    trace.eta = max_on(q, 0, 1);
    trace.eta_prime = std::max(trace.eta, 1 - eps);
    tails[0] = lowest_degree_below(1 - trace.eta_prime, Parity::Odd);
    tails[1] = select_tail_params(sub(q, Poly{q(2.0)}), TailVariant::NegativeBeyond2, Parity::Odd);
    tails[2] = select_tail_params(sub(q, Poly{q(-1.0)}), TailVariant::NegativeBelowMinus1, Parity::Odd);
  }
  for (const auto& t : tails) {
    alpha += t.alpha;
    beta += t.beta;
  }
  trace.tail_params = tails;
  if (beta > kBetaOverflow || 2LL * alpha + 1 + beta > kWideExactDegree) {
    throw Error(ErrorCode::BetaOverflow,
                "proof parameters alpha = " + std::to_string(alpha) + ", beta = " +
                    std::to_string(beta) + " (m = " + std::to_string(trace.m) + ", beta0 = " +
                    std::to_string(trace.beta0) + ") exceed the exact expansion range");
  }
  const CorrectionParams cp(alpha, static_cast<int>(beta));
  trace.final_params = cp;
  trace.sup_r = r_sup(cp);
  trace.corrected = true;
  const WidePoly exact = add(poly_cast<Wide>(q), r_poly_wide(cp));
  trace.exact_verdict = check_family(exact, fam).verdict;
  const Poly u = pin_endpoints(poly_cast<double>(exact), fam);
  trace.verdict = check_family(u, fam).verdict;
  return {u, exact, trace};
}

}  // namespace

CorrectionResult correct_to_family(const Poly& q, Family fam, double eps, CorrectionMode mode) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (fam != Family::P && fam != Family::Q) {
    throw Error(ErrorCode::InvalidArgument, "correction targets P or Q");
  }
  PipelineTrace trace;
  trace.mode = mode;
  trace.eps_internal = eps;
  if (check_family(q, fam).verdict == Verdict::Member) {
    trace.verdict = trace.exact_verdict = Verdict::Member;
    return {q, poly_cast<Wide>(q), trace};
  }
  const std::string why = step2_structure_violation(q, fam);
  if (!why.empty()) throw Error(ErrorCode::PreconditionFailed, why);
  return mode == CorrectionMode::MinimalSearch ? minimal_search(q, fam, eps, trace)
                                               : proof_faithful(q, fam, eps, trace);
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

constexpr int kBernsteinMax = 200;
constexpr int kSearchGrid = 2000;
constexpr int kFinalGrid = 10000;

template <class F, class G>
double grid_gap(const F& a, const G& b, int n) {
  double worst = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    worst = std::max(worst, std::fabs(a(x) - b(x)));
  }
  return worst;
}

}  // namespace

Approximation approximate_in_family(const TargetFunction& f, Family fam, double delta,
                                    CorrectionMode mode) {
  if (fam != Family::P && fam != Family::Q) {
    throw Error(ErrorCode::InvalidArgument, "approximate_in_family targets P or Q");
  }
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const bool p_like = is_p_like(fam);
  const auto cls = check_target(f, p_like ? TargetClass::F1 : TargetClass::F2);
  if (cls.verdict == Verdict::NotMember) {
    std::string why = "target '" + f.name() + "' is not in " + (p_like ? "F1" : "F2");
    if (!cls.witnesses.empty()) why += " (" + cls.witnesses.front().clause + ")";
    throw Error(ErrorCode::TargetNotInClass, why);
  }

  Approximation out;
  auto& rep = out.report;
  rep.family = fam;
  rep.delta = delta;

  if (!p_like && f.is_identically_zero()) {
    out.u = Poly{0.0, delta, -delta};
    rep.zero_target = true;
    rep.u_degree = 2;
    rep.error = grid_gap(out.u, f, kFinalGrid);
    rep.membership = check_family(out.u, fam);
    rep.trace.corrected = false;
    return out;
  }

  const double eps = delta / 3;
  const double end_value = p_like ? 1.0 : 0.0;

  // Step 1: Bernstein polynomial strictly inside (0,1) on the open interval.
  std::optional<BernsteinForm> B;
  double best_err = INFINITY;
  for (int n = 1; n <= kBernsteinMax && !B; ++n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    bool interior = false;
    for (int k = 0; k <= n; ++k) {
      v[k] = std::clamp(f(static_cast<double>(k) / n), 0.0, 1.0);
      if (k > 0 && k < n && v[k] > 0 && v[k] < 1) interior = true;
    }
    v.front() = 0.0;
    v.back() = end_value;
    if (!interior) continue;
    BernsteinForm bf(std::move(v));
    const double err = grid_gap(bf, f, kSearchGrid);
    best_err = std::min(best_err, err);
    if (err < eps && grid_gap(bf, f, kFinalGrid) < eps) {
      rep.bernstein_n = n;
      rep.bernstein_error = grid_gap(bf, f, kFinalGrid);
      B = std::move(bf);
    }
  }
  if (!B) {
    throw Error(ErrorCode::ConvergenceBudgetExceeded,
                "Bernstein degree cap " + std::to_string(kBernsteinMax) +
                    " reached; best sup error " + std::to_string(best_err) + " vs " +
                    std::to_string(eps));
  }

  auto finish = [&](const Poly& q, const CorrectionResult& cr) {
    const double err = grid_gap(cr.u, f, kFinalGrid);
    const auto mem = check_family(cr.u, fam);
    if (mem.verdict != Verdict::Member || !(err < delta)) return false;
    out.u = cr.u;
    rep.q_degree = q.degree();
    rep.u_degree = cr.u.degree();
    rep.error = err;
    rep.trace = cr.trace;
    rep.membership = mem;
    return true;
  };

  // The Bernstein polynomial itself may already be a member.
  if (B->degree() <= 30) {
    const Poly p = pin_endpoints(B->to_monomial(), fam);
    if (check_family(p, fam).verdict == Verdict::Member) {
      CorrectionResult cr{p, poly_cast<Wide>(p), {}};
      cr.trace.mode = mode;
      cr.trace.eps_internal = eps;
      rep.q_error = 0;
      if (finish(p, cr)) return out;
    }
  }

  // Step 2: interpolate guard-extended nodes, coarse node spacing first.
  // Where B_n f is numerically flat (f constant on a stretch, e.g. a step
  // target) no node spacing finds distinct values; the retry tilts p towards
  // t = x (P) or 4x(1-x) (Q), |p_tau - p| <= tau, and charges tau to the
  // interpolation budget: |q - p_tau| < eps - tau.
  std::string last_failure = "no node set tried";
  for (const double tau : {0.0, eps / 4}) {
    const auto t_val = [p_like](double x) { return p_like ? x : 4 * x * (1 - x); };
    const auto t_der = [p_like](double x) { return p_like ? 1.0 : 4 - 8 * x; };
    const double slope = (1 - tau) * B->slope_bound() + tau * (p_like ? 1.0 : 4.0);
    const auto p_fn = [&](double x) { return (1 - tau) * (*B)(x) + tau * t_val(x); };
    InterpOptions opt;
    opt.hint_derivative = [&](double x) {
      return (1 - tau) * B->derivative_at(x) + tau * t_der(x);
    };
    opt.hint_lo = 0;
    opt.hint_hi = 1;
    std::vector<double> node_eps;
    for (double e = std::max(slope, eps); e > eps; e /= 2) node_eps.push_back(e);
    node_eps.push_back(eps);
    for (double ne : node_eps) {
      Poly q;
      NodeSet S({{0, 0}, {1, 1}});
      try {
        S = guard_extend(build_nodes(p_fn, slope, ne), fam);
        // Past this many nodes a double monomial q is hopeless; skip the
        // cost of searching up to the interpolation cap.
        if (S.size() > kMaxPipelineNodes) {
          last_failure = std::to_string(S.size()) + " nodes exceed the pipeline limit";
          break;
        }
        q = pin_endpoints(monotone_interpolate(S, 1e-8, opt), fam);
      } catch (const Error& e) {
        last_failure = e.what();
        continue;
      }
      const double qerr = grid_gap(q, p_fn, kSearchGrid);
      if (!(qerr < eps - tau)) {
        last_failure = "interpolant misses p by " + std::to_string(qerr);
        continue;
      }
      const std::string why = step2_structure_violation(q, fam);
      if (!why.empty()) {
        last_failure = why;
        continue;
      }
      try {
        const auto cr = correct_to_family(q, fam, eps, mode);
        rep.nodes = static_cast<int>(S.size());
        rep.node_eps = ne;
        rep.q_error = qerr;
        rep.tilt = tau;
        if (finish(q, cr)) return out;
        last_failure = "corrected polynomial failed the final check";
      } catch (const Error& e) {
        last_failure = e.what();
      }
    }
  }
  throw Error(ErrorCode::ConvergenceBudgetExceeded,
              "pipeline found no member within delta; last failure: " + last_failure);
}

TargetFunction extend_across_gaps(const std::vector<Interval>& A, const TargetFunction& f,
                                  Family fam) {
  if (A.empty()) throw Error(ErrorCode::InvalidArgument, "subset is empty");
  std::vector<Interval> pieces = A;
  std::sort(pieces.begin(), pieces.end(), [](auto a, auto b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].lo < 0 || pieces[i].hi > 1) {
      throw Error(ErrorCode::InvalidArgument, "subset intervals must lie in [0,1]");
    }
    if (i > 0 && !(pieces[i].lo > pieces[i - 1].hi)) {
      throw Error(ErrorCode::InvalidArgument, "subset intervals must be disjoint");
    }
  }
  const double end_value = is_p_like(fam) ? 1.0 : 0.0;
  constexpr double tol = 1e-12;
  if (pieces.front().lo == 0 && std::fabs(f(0.0)) > tol) {
    throw Error(ErrorCode::TargetNotInClass, "f(0) must be 0");
  }
  if (pieces.back().hi == 1 && std::fabs(f(1.0) - end_value) > tol) {
    throw Error(ErrorCode::TargetNotInClass, "f(1) has the wrong value for the family");
  }

  // Knots at the ends of the gaps.
  std::vector<double> kx, ky;
  if (pieces.front().lo > 0) {
    kx.push_back(0);
    ky.push_back(0);
  }
  for (const auto& I : pieces) {
    kx.push_back(I.lo);
    ky.push_back(f(I.lo));
    kx.push_back(I.hi);
    ky.push_back(f(I.hi));
  }
  if (pieces.back().hi < 1) {
    kx.push_back(1);
    ky.push_back(end_value);
  }
  return TargetFunction::callable("extension", [pieces, kx, ky, f](double x) {
    for (const auto& I : pieces)
      if (I.contains(x)) return f(x);
    const auto it = std::upper_bound(kx.begin(), kx.end(), x);
    const std::size_t j = std::clamp<std::size_t>(it - kx.begin(), 1, kx.size() - 1);
    const double t = (x - kx[j - 1]) / (kx[j] - kx[j - 1]);
    return ky[j - 1] + t * (ky[j] - ky[j - 1]);
  });
}

Approximation approximate_on_subset(const std::vector<Interval>& A, const TargetFunction& f,
                                    Family fam, double eps) {
  if (fam != Family::Pprime && fam != Family::Qprime) {
    throw Error(ErrorCode::InvalidArgument, "approximate_on_subset targets Pprime or Qprime");
  }
  const Family base = is_p_like(fam) ? Family::P : Family::Q;
  const TargetFunction g = extend_across_gaps(A, f, base);
  auto error_on_A = [&](const Poly& u) {
    double err = 0;
    for (const auto& I : A) {
      for (int i = 0; i <= 2000; ++i) {
        const double x = I.lo + I.width() * i / 2000;
        err = std::max(err, std::fabs(u(x) - f(x)));
      }
    }
    return err;
  };

  // Only the error on A counts, so a low-degree Bernstein polynomial of the
  // extension may already do; the full pipeline would need the error budget
  // on the gaps as well.
  for (int n = 1; n <= kSubsetBernsteinMax; ++n) {
    const Poly p = pin_endpoints(BernsteinForm(g, n).to_monomial(), fam);
    if (p.degree() < 1) continue;
    const double err = error_on_A(p);
    if (!(err < eps)) continue;
    auto strict = check_family(p, fam);
    if (strict.verdict != Verdict::Member) continue;
    Approximation res;
    res.u = p;
    auto& rep = res.report;
    rep.family = fam;
    rep.delta = eps;
    rep.bernstein_n = n;
    rep.bernstein_error = err;
    rep.q_degree = rep.u_degree = p.degree();
    rep.error = err;
    rep.trace.eps_internal = eps / 3;
    rep.membership = std::move(strict);
    return res;
  }

  std::string last = "no attempt";
  for (double d = eps; d > eps / 16; d /= 2) {
    Approximation res;
    try {
      res = approximate_in_family(g, base, d);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConvergenceBudgetExceeded) throw;
      last = e.what();
      continue;
    }
    const double err = error_on_A(res.u);
    const auto strict = check_family(res.u, fam);
    if (strict.verdict == Verdict::Member && err < eps) {
      res.report.error = err;
      res.report.membership = strict;
      return res;
    }
    last = "strict membership " + std::string(to_string(strict.verdict)) + ", error on A " +
           std::to_string(err);
  }
  throw Error(ErrorCode::ConvergenceBudgetExceeded, "no strict member found: " + last);
}

}  // namespace qsppoly

#include "qsppoly/membership.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "qsppoly/errors.hpp"
#include "qsppoly/realroots.hpp"
#include "qsppoly/scalar.hpp"

namespace qsppoly {

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::P: return "P";
    case Family::Q: return "Q";
    case Family::Pprime: return "Pprime";
    case Family::Qprime: return "Qprime";
  }
  return "?";
}

const char* to_string(TargetClass c) noexcept { return c == TargetClass::F1 ? "F1" : "F2"; }

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::MemberWithinTol: return "MemberWithinTol";
    case Verdict::NotMember: return "NotMember";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "P") return Family::P;
  if (s == "Q") return Family::Q;
  if (s == "Pprime" || s == "P'") return Family::Pprime;
  if (s == "Qprime" || s == "Q'") return Family::Qprime;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + s + "'");
}

TargetClass target_class_from_string(const std::string& s) {
  if (s == "F1") return TargetClass::F1;
  if (s == "F2") return TargetClass::F2;
  throw Error(ErrorCode::InvalidArgument, "unknown target class '" + s + "'");
}

bool is_strict(Family f) noexcept { return f == Family::Pprime || f == Family::Qprime; }
bool is_p_like(Family f) noexcept { return f == Family::P || f == Family::Pprime; }

double default_tolerance() {
  if (const char* env = std::getenv("QSPPOLY_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0) return v;
  }
  return 1e-9;
}

namespace {

constexpr const char* kRange = "(i) 0 <= p <= 1 on [0,1]";
constexpr const char* kLeft = "(ii) p <= 0 for x <= 0";
constexpr const char* kRightP = "(iii) p >= 1 for x >= 1";
constexpr const char* kRightQ = "(iii') p <= 0 for x >= 1";
constexpr const char* kRangeStrict = "(i) 0 < p < 1 on (0,1)";
constexpr const char* kLeftStrict = "(ii) p < 0 for x < 0";
constexpr const char* kRightPStrict = "(iii) p > 1 for x > 1";
constexpr const char* kRightQStrict = "(iii') p < 0 for x > 1";

// Tracks one clause: worst violation beyond the rounding floor, its location,
// violating probe points, and the smallest slack.
struct ClauseState {
  explicit ClauseState(std::string n) : name(std::move(n)) {}
  std::string name;
  double margin = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  double worst_x = 0.0;
  double worst_value = 0.0;
  std::vector<Witness> probes;
};

template <class T>
class Checker {
 public:
  Checker(const BasicPoly<T>& p, double tol) : p_(p), tol_(tol) {
    const int n = std::max(p.degree(), 0);
    gamma_ = T(2 * n + 2) * scalar::unit_roundoff<T>();
  }

  // violation(value) > 0 means the clause fails at x.
  template <class Viol>
  void consider(ClauseState& c, double x, bool probe, Viol violation) {
    const T xv(x);
    const T val = eval(p_, xv);
    const T v = violation(val);
    const double vd = scalar::to_double(v);
    c.margin = std::min(c.margin, -vd);
    const T floor = gamma_ * (T(1) + eval_magnitude(p_, xv));
    if (v <= floor) return;
    if (vd > c.worst) {
      c.worst = vd;
      c.worst_x = x;
      c.worst_value = scalar::to_double(val);
    }
    if (probe && vd > tol_) c.probes.push_back({x, scalar::to_double(val), c.name});
  }

  const BasicPoly<T>& p() const { return p_; }

 private:
  const BasicPoly<T>& p_;
  double tol_;
  T gamma_;
};

template <class T>
double bound_for(const BasicPoly<T>& g) {
  if (g.degree() < 1) return 2.0;
  return std::max(2.0, scalar::to_double(root_bound(g)));
}

template <class T>
std::vector<double> critical_points(const BasicPoly<T>& p, Interval I) {
  std::vector<double> out;
  const auto dp = derivative(p);
  if (dp.degree() < 1) return out;
  for (const auto& r : roots_in(dp, I)) out.push_back(scalar::to_double(r));
  return out;
}

// First interior zero of g on I (excluding a 4e-10 collar at the ends), for
// strict-clause witnesses.
template <class T>
std::optional<double> interior_zero(const BasicPoly<T>& g, Interval I) {
  if (g.degree() < 1) return std::nullopt;
  for (const auto& r : roots_in(g, I)) {
    const double x = scalar::to_double(r);
    if (x - I.lo > 4e-10 && I.hi - x > 4e-10) return x;
  }
  return std::nullopt;
}

template <class T>
MembershipReport check_family_impl(const BasicPoly<T>& p, Family fam, double tol) {
  MembershipReport rep;
  rep.family = fam;
  const bool strict = is_strict(fam);
  const bool plike = is_p_like(fam);
  Checker<T> chk(p, tol);

  ClauseState range{strict ? kRangeStrict : kRange};
  ClauseState left{strict ? kLeftStrict : kLeft};
  ClauseState right{plike ? (strict ? kRightPStrict : kRightP)
                          : (strict ? kRightQStrict : kRightQ)};

  auto range_viol = [](const T& v) { return std::max(T(-v), T(v - T(1))); };
  auto left_viol = [](const T& v) { return v; };
  auto right_viol = [plike](const T& v) { return plike ? T(T(1) - v) : v; };

  // (i) extrema on [0,1].
  chk.consider(range, 0.5, true, range_viol);
  for (double x : {0.0, 1.0}) chk.consider(range, x, false, range_viol);
  for (double x : critical_points(p, Interval(0.0, 1.0))) chk.consider(range, x, false, range_viol);

  // (ii) on [-B, 0] and beyond.
  const double bl = bound_for(p);
  chk.consider(left, -1.0, true, left_viol);
  for (double x : {-bl, 0.0}) chk.consider(left, x, false, left_viol);
  for (double x : critical_points(p, Interval(-bl, 0.0))) chk.consider(left, x, false, left_viol);

  // (iii) on [1, B] and beyond.
  const BasicPoly<T> g = plike ? sub(p, BasicPoly<T>::constant(T(1))) : p;
  const double br = bound_for(g);
  chk.consider(right, 2.0, true, right_viol);
  for (double x : {1.0, br}) chk.consider(right, x, false, right_viol);
  for (double x : critical_points(p, Interval(1.0, br))) chk.consider(right, x, false, right_viol);

  // Beyond every real root the sign is that of the leading term.
  const int n = p.degree();
  if (n >= 1) {
    const int lead = scalar::sign(p.leading());
    const int at_minus_inf = (n % 2 == 0) ? lead : -lead;
    if (at_minus_inf > 0) chk.consider(left, -2 * bl, false, left_viol);
    const int g_lead = scalar::sign(g.leading());
    if ((plike && g_lead < 0) || (!plike && g_lead > 0)) {
      chk.consider(right, 2 * br, false, right_viol);
    }
  }

  rep.checked_bound = std::max(bl, br);

  std::vector<Witness> strict_witnesses;
  if (strict) {
    auto need = [&](const BasicPoly<T>& h, Interval I, SignKind want, const ClauseState& c) {
      const auto sv = sign_on(h, I, true);
      if (sv.kind == want) return;
      std::optional<double> x = sv.witness;
      if (!x) x = interior_zero(h, I);
      if (!x) x = 0.5 * (I.lo + I.hi);
      strict_witnesses.push_back({*x, scalar::to_double(eval(p, T(*x))), c.name});
    };
    if (p.is_zero()) {
      strict_witnesses.push_back({0.5, 0.0, range.name});
    } else {
      need(p, Interval(0.0, 1.0), SignKind::StrictlyPositive, range);
      need(sub(BasicPoly<T>::constant(T(1)), p), Interval(0.0, 1.0), SignKind::StrictlyPositive,
           range);
      need(p, Interval(-bl, 0.0), SignKind::StrictlyNegative, left);
      need(g, Interval(1.0, br), plike ? SignKind::StrictlyPositive : SignKind::StrictlyNegative,
           right);
    }
  }

  double worst = 0.0;
  for (ClauseState* c : {&range, &left, &right}) {
    rep.margins.push_back({c->name, c->margin});
    worst = std::max(worst, c->worst);
    if (c->worst > tol) {
      for (const auto& w : c->probes) rep.witnesses.push_back(w);
      const bool dup = std::any_of(c->probes.begin(), c->probes.end(),
                                   [&](const Witness& w) { return w.x == c->worst_x; });
      if (!dup) rep.witnesses.push_back({c->worst_x, c->worst_value, c->name});
    }
  }
  // Strict failures only matter once the closed clauses hold.
  if (rep.witnesses.empty()) {
    for (const auto& w : strict_witnesses) rep.witnesses.push_back(w);
  }
  rep.worst_violation = worst;
  if (!rep.witnesses.empty()) {
    rep.verdict = Verdict::NotMember;
  } else if (worst > 0.0) {
    rep.verdict = Verdict::MemberWithinTol;
  } else {
    rep.verdict = Verdict::Member;
  }
  return rep;
}

// Range of a general continuous function on [0,1]: dense grid, then local
// golden-section refinement around the extreme samples.
struct Extrema {
  double min_x, min_v, max_x, max_v;
};

Extrema sampled_extrema(const TargetFunction& f) {
  constexpr int kGrid = 4096;
  Extrema e{0, f(0.0), 0, f(0.0)};
  for (int i = 1; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    const double v = f(x);
    if (v < e.min_v) e = {x, v, e.max_x, e.max_v};
    if (v > e.max_v) e = {e.min_x, e.min_v, x, v};
  }
  auto refine = [&](double center, int sign) {
    double a = std::max(0.0, center - 1.0 / kGrid);
    double b = std::min(1.0, center + 1.0 / kGrid);
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 60; ++it) {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if (sign * f(c) > sign * f(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    return 0.5 * (a + b);
  };
  const double xmin = refine(e.min_x, -1);
  if (f(xmin) < e.min_v) e.min_x = xmin, e.min_v = f(xmin);
  const double xmax = refine(e.max_x, 1);
  if (f(xmax) > e.max_v) e.max_x = xmax, e.max_v = f(xmax);
  return e;
}

}  // namespace

MembershipReport check_family(const Poly& p, Family fam, double tol) {
  return check_family_impl(p, fam, tol);
}

MembershipReport check_family(const WidePoly& p, Family fam, double tol) {
  return check_family_impl(p, fam, tol);
}

MembershipReport check_target(const TargetFunction& f, TargetClass cls, double tol) {
  MembershipReport rep;
  rep.family = cls == TargetClass::F1 ? Family::P : Family::Q;
  rep.target_class = cls;
  rep.checked_bound = 1.0;
  if (!f.is_continuous()) {
    rep.verdict = Verdict::NotMember;
    rep.witnesses.push_back({0.5, f(0.5), "continuity on [0,1]"});
    rep.worst_violation = 0.5;
    return rep;
  }

  double worst = 0.0;
  auto clause = [&](const std::string& name, double slack, double x, double value) {
    rep.margins.push_back({name, slack});
    if (-slack > tol) rep.witnesses.push_back({x, value, name});
    worst = std::max(worst, -slack);
  };

  const double f0 = f(0.0), f1 = f(1.0);
  const double want1 = cls == TargetClass::F1 ? 1.0 : 0.0;
  clause("f(0) = 0", -std::fabs(f0), 0.0, f0);
  clause(cls == TargetClass::F1 ? "f(1) = 1" : "f(1) = 0", -std::fabs(f1 - want1), 1.0, f1);

  double min_x = 0, min_v = f0, max_x = 0, max_v = f0;
  switch (f.kind()) {
    case TargetFunction::Kind::Table:
      for (std::size_t i = 0; i < f.xs().size(); ++i) {
        if (f.ys()[i] < min_v) min_x = f.xs()[i], min_v = f.ys()[i];
        if (f.ys()[i] > max_v) max_x = f.xs()[i], max_v = f.ys()[i];
      }
      break;
    case TargetFunction::Kind::PolyTarget: {
      std::vector<double> cand{0.0, 1.0};
      for (double x : critical_points(f.poly(), Interval(0.0, 1.0))) cand.push_back(x);
      for (double x : cand) {
        const double v = f(x);
        if (v < min_v) min_x = x, min_v = v;
        if (v > max_v) max_x = x, max_v = v;
      }
      break;
    }
    default: {
      const auto e = sampled_extrema(f);
      min_x = e.min_x, min_v = e.min_v, max_x = e.max_x, max_v = e.max_v;
    }
  }
  clause("f >= 0 on [0,1]", min_v, min_x, min_v);
  clause("f <= 1 on [0,1]", 1.0 - max_v, max_x, max_v);

  rep.worst_violation = worst;
  if (!rep.witnesses.empty()) {
    rep.verdict = Verdict::NotMember;
  } else if (worst > 0.0) {
    rep.verdict = Verdict::MemberWithinTol;
  } else {
    rep.verdict = Verdict::Member;
  }
  return rep;
}

bool parity_consequence(const Poly& p, Family fam) {
  const int d = p.degree();
  if (d < 0) return !is_p_like(fam);
  return is_p_like(fam) ? (d % 2 == 1) : (d % 2 == 0);
}

}  // namespace qsppoly

#include "qsppoly/realroots.hpp"

#include <algorithm>
#include <cmath>

#include "qsppoly/scalar.hpp"

namespace qsppoly {

const char* to_string(SignKind kind) noexcept {
  switch (kind) {
    case SignKind::StrictlyPositive: return "StrictlyPositive";
    case SignKind::StrictlyNegative: return "StrictlyNegative";
    case SignKind::NonNegative: return "NonNegative";
    case SignKind::NonPositive: return "NonPositive";
    case SignKind::Mixed: return "Mixed";
  }
  return "Unknown";
}

namespace {

// True when a root of p lies within ~tol of x by a second-order Taylor
// estimate, or |p(x)| is at the level of Horner rounding error.
template <class T>
struct ZeroTest {
  const BasicPoly<T>& p;
  BasicPoly<T> d1, d2;
  T tol, floor_scale;

  ZeroTest(const BasicPoly<T>& p_, double tol_)
      : p(p_), d1(derivative(p_)), d2(derivative(d1)), tol(tol_) {
    floor_scale = T(8 * (2 * std::max(p.degree(), 0) + 2)) * scalar::unit_roundoff<T>();
  }

  bool operator()(const T& x, const T& value) const {
    const T reach = tol * scalar::abs(eval(d1, x)) + tol * tol * scalar::abs(eval(d2, x));
    return scalar::abs(value) <= reach + floor_scale * (T(1) + eval_magnitude(p, x));
  }
};

// Root of p in the bracket (a, b) where p(a), p(b) have opposite signs.
// Illinois-modified regula falsi; falls back to bisection when the bracket
// stalls, and never steps closer than ~tol/2 to an end so the bracket closes.
template <class T>
T bracket_root(const BasicPoly<T>& p, T a, T b, T fa, T fb, double tol) {
  const T t(tol);
  int side = 0;
  bool bisect = false;
  T width_mark = b - a;
  for (int it = 0; it < 400 && b - a > t; ++it) {
    T x = bisect ? (a + b) / T(2) : (a * fb - b * fa) / (fb - fa);
    const T h = std::min(T(t / T(2)), T((b - a) / T(4)));
    if (x < a + h) x = a + h;
    if (x > b - h) x = b - h;
    const T fx = eval(p, x);
    if (fx == T(0)) return x;
    if (scalar::sign(fx) == scalar::sign(fa)) {
      a = x;
      fa = fx;
      if (side == -1) fb /= T(2);
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa /= T(2);
      side = 1;
    }
    if (it % 4 == 3) {
      bisect = (b - a) > width_mark / T(2);
      width_mark = b - a;
    }
  }
  return (a + b) / T(2);
}

}  // namespace

template <class T>
std::vector<T> roots_in(const BasicPoly<T>& p, Interval I, double tol) {
  std::vector<T> out;
  const int n = p.degree();
  if (n < 1) return out;
  const T lo(I.lo), hi(I.hi);
  if (n == 1) {
    const T r = -p.coeff(0) / p.coeff(1);
    if (r >= lo - T(tol) && r <= hi + T(tol)) out.push_back(std::clamp(r, lo, hi));
    return out;
  }
  const ZeroTest<T> near_zero(p, tol);
  if (I.lo == I.hi) {
    if (near_zero(lo, eval(p, lo))) out.push_back(lo);
    return out;
  }

  std::vector<T> pts;
  pts.push_back(lo);
  for (const auto& c : roots_in(derivative(p), I, tol)) {
    if (c > lo && c < hi) pts.push_back(c);
  }
  pts.push_back(hi);

  std::vector<T> vals(pts.size());
  std::vector<char> zero(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = eval(p, pts[i]);
    zero[i] = near_zero(pts[i], vals[i]);
  }

  std::vector<T> found;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (zero[i]) found.push_back(pts[i]);
    if (i + 1 == pts.size()) break;
    // On a monotone piece whose end is already (numerically) a root there is
    // no room for another one.
    if (zero[i] || zero[i + 1]) continue;
    if (scalar::sign(vals[i]) * scalar::sign(vals[i + 1]) < 0) {
      found.push_back(bracket_root(p, pts[i], pts[i + 1], vals[i], vals[i + 1], tol));
    }
  }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    if (out.empty() || r - out.back() > T(tol)) out.push_back(r);
  }
  return out;
}

template <class T>
SignVerdict sign_on(const BasicPoly<T>& p, Interval I, bool strict_interior, double tol) {
  SignVerdict v;
  if (p.is_zero()) {
    v.kind = SignKind::NonNegative;
    return v;
  }
  if (p.degree() == 0) {
    const double c = scalar::to_double(p.coeff(0));
    v.kind = c > 0 ? SignKind::StrictlyPositive : SignKind::StrictlyNegative;
    v.margin = std::fabs(c);
    return v;
  }

  const auto roots = roots_in(p, I, tol);
  std::vector<double> brk{I.lo};
  bool interior_root = false;
  const double excuse = strict_interior ? 4 * tol : -1.0;
  for (const auto& r : roots) {
    const double x = scalar::to_double(r);
    if (x - I.lo > excuse && I.hi - x > excuse) interior_root = true;
    if (x > I.lo && x < I.hi) brk.push_back(x);
  }
  brk.push_back(I.hi);

  struct Seg {
    double mid, value, len;
  };
  std::vector<Seg> segs;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    const double len = brk[i + 1] - brk[i];
    if (len <= 0) continue;
    const double mid = 0.5 * (brk[i] + brk[i + 1]);
    const double val = scalar::to_double(eval(p, T(mid)));
    segs.push_back({mid, val, len});
    margin = std::min(margin, std::fabs(val));
  }
  if (segs.empty()) {
    const double val = scalar::to_double(eval(p, T(I.lo)));
    segs.push_back({I.lo, val, 0.0});
    margin = std::fabs(val);
  }
  if (!strict_interior) {
    for (double e : {I.lo, I.hi}) {
      margin = std::min(margin, std::fabs(scalar::to_double(eval(p, T(e)))));
    }
  }
  v.margin = margin;

  double pos_len = 0, neg_len = 0;
  int npos = 0, nneg = 0;
  for (const auto& s : segs) {
    if (s.value > 0) {
      ++npos;
      pos_len += s.len;
    } else if (s.value < 0) {
      ++nneg;
      neg_len += s.len;
    }
  }
  if (nneg == 0) {
    v.kind = interior_root || npos < static_cast<int>(segs.size()) ? SignKind::NonNegative
                                                                    : SignKind::StrictlyPositive;
    return v;
  }
  if (npos == 0) {
    v.kind = interior_root || nneg < static_cast<int>(segs.size()) ? SignKind::NonPositive
                                                                    : SignKind::StrictlyNegative;
    return v;
  }
  v.kind = SignKind::Mixed;
  const bool minority_negative = neg_len < pos_len || (neg_len == pos_len && nneg <= npos);
  double best = -1;
  for (const auto& s : segs) {
    if ((s.value < 0) == minority_negative && s.value != 0 && std::fabs(s.value) > best) {
      best = std::fabs(s.value);
      v.witness = s.mid;
    }
  }
  return v;
}

template std::vector<double> roots_in(const BasicPoly<double>&, Interval, double);
template std::vector<Wide> roots_in(const BasicPoly<Wide>&, Interval, double);
template SignVerdict sign_on(const BasicPoly<double>&, Interval, bool, double);
template SignVerdict sign_on(const BasicPoly<Wide>&, Interval, bool, double);

}  // namespace qsppoly

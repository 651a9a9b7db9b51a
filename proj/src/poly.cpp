#include "qsppoly/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsppoly/errors.hpp"
#include "qsppoly/realroots.hpp"
#include "qsppoly/scalar.hpp"

namespace qsppoly {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) {
    throw Error(ErrorCode::InvalidArgument,
                "interval requires lo <= hi, got [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

namespace {

template <class T>
void trim_exact(std::vector<T>& c) {
  while (!c.empty() && c.back() == T(0)) c.pop_back();
}

}  // namespace

template <class T>
BasicPoly<T>::BasicPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
  trim_exact(coeffs_);
}

template <class T>
BasicPoly<T>::BasicPoly(std::initializer_list<T> coeffs) : coeffs_(coeffs) {
  trim_exact(coeffs_);
}

template <class T>
BasicPoly<T> BasicPoly<T>::constant(const T& c) {
  return BasicPoly(std::vector<T>{c});
}

template <class T>
BasicPoly<T> BasicPoly<T>::monomial(int k, const T& c) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "monomial degree must be >= 0");
  std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
  v.back() = c;
  return BasicPoly(std::move(v));
}

template <class T>
T BasicPoly<T>::coeff(int k) const {
  if (k < 0 || k > degree()) return T(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

template <class T>
T BasicPoly<T>::operator()(const std::type_identity_t<T>& x) const {
  return eval(*this, x);
}

template <class T>
T eval(const BasicPoly<T>& p, const std::type_identity_t<T>& x) {
  const auto& c = p.coeffs();
  T acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class T>
T eval_magnitude(const BasicPoly<T>& p, const std::type_identity_t<T>& x) {
  const auto& c = p.coeffs();
  const T ax = scalar::abs(x);
  T acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + scalar::abs(*it);
  return acc;
}

template <class T>
BasicPoly<T> derivative(const BasicPoly<T>& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<T> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * T(static_cast<int>(k));
  return BasicPoly<T>(std::move(d));
}

template <class T>
BasicPoly<T> antiderivative(const BasicPoly<T>& p) {
  const auto& c = p.coeffs();
  if (c.empty()) return {};
  std::vector<T> a(c.size() + 1, T(0));
  for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / T(static_cast<int>(k + 1));
  return BasicPoly<T>(std::move(a));
}

template <class T>
BasicPoly<T> add(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<T> s(std::max(a.size(), b.size()), T(0));
  for (std::size_t k = 0; k < a.size(); ++k) s[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) s[k] += b[k];
  return BasicPoly<T>(std::move(s));
}

template <class T>
BasicPoly<T> sub(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<T> s(std::max(a.size(), b.size()), T(0));
  for (std::size_t k = 0; k < a.size(); ++k) s[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) s[k] -= b[k];
  return BasicPoly<T>(std::move(s));
}

template <class T>
BasicPoly<T> scale(const BasicPoly<T>& p, const std::type_identity_t<T>& c) {
  std::vector<T> s = p.coeffs();
  for (auto& v : s) v *= c;
  return BasicPoly<T>(std::move(s));
}

template <class T>
BasicPoly<T> mul(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  if (a.empty() || b.empty()) return {};
  std::vector<T> m(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m[i + j] += a[i] * b[j];
  }
  return BasicPoly<T>(std::move(m));
}

template <class T>
BasicPoly<T> compose_affine(const BasicPoly<T>& p, const std::type_identity_t<T>& a,
                            const std::type_identity_t<T>& b) {
  std::vector<T> d = p.coeffs();
  const std::size_t n = d.size();
  if (n == 0) return {};
  // Taylor shift: after pass i, d[i] holds the i-th coefficient of p(u + b).
  if (b != T(0)) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j-- > i;) d[j] += b * d[j + 1];
    }
  }
  if (a != T(1)) {
    T ak(1);
    for (std::size_t k = 0; k < n; ++k) {
      d[k] *= ak;
      ak *= a;
    }
  }
  return BasicPoly<T>(std::move(d));
}

template <class T>
BasicPoly<T> divide_linear(const BasicPoly<T>& p, const std::type_identity_t<T>& r,
                           T* remainder) {
  const auto& c = p.coeffs();
  if (c.empty()) {
    if (remainder) *remainder = T(0);
    return {};
  }
  std::vector<T> q(c.size() - 1, T(0));
  T acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    q[k] = acc;
    acc = c[k] + r * acc;
  }
  if (remainder) *remainder = acc;
  return BasicPoly<T>(std::move(q));
}

template <class T>
T cauchy_bound(const BasicPoly<T>& p) {
  if (p.degree() < 1) {
    throw Error(ErrorCode::DegreeTooLow, "root bound needs degree >= 1");
  }
  const auto& c = p.coeffs();
  const T lead = scalar::abs(c.back());
  T m(0);
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, T(scalar::abs(c[k]) / lead));
  return T(1) + m;
}

template <class T>
T root_bound(const BasicPoly<T>& p) {
  const T cauchy = cauchy_bound(p);
  const auto& c = p.coeffs();
  const int n = p.degree();
  const T lead = scalar::abs(c.back());
  T f(0);
  for (int k = 1; k <= n; ++k) {
    T ratio = scalar::abs(c[static_cast<std::size_t>(n - k)]) / lead;
    if (k == n) ratio /= T(2);
    if (ratio == T(0)) continue;
    f = std::max(f, T(scalar::pow(ratio, T(1) / T(k))));
  }
  f *= T(2);
  // Fujiwara's bound is attained by some polynomials; widen slightly so the
  // bound is strict.
  const T bound = std::min(cauchy, f) * T(1.0000001);
  return bound > T(0) ? bound : T(1);
}

template <class T>
SupResult sup_abs_on(const BasicPoly<T>& p, Interval I, double tol) {
  SupResult best{0.0, I.lo};
  if (p.is_zero()) return best;
  auto consider = [&](double x) {
    const double v = scalar::to_double(scalar::abs(eval(p, T(x))));
    if (v > best.value) best = {v, x};
  };
  consider(I.lo);
  consider(I.hi);
  const auto dp = derivative(p);
  if (!dp.is_zero()) {
    for (const auto& r : roots_in(dp, I, tol)) consider(scalar::to_double(r));
  }
  return best;
}

#define QSPPOLY_INSTANTIATE(T)                                                             \
  template class BasicPoly<T>;                                                             \
  template T eval(const BasicPoly<T>&, const T&);                                          \
  template T eval_magnitude(const BasicPoly<T>&, const T&);                                \
  template BasicPoly<T> derivative(const BasicPoly<T>&);                                   \
  template BasicPoly<T> antiderivative(const BasicPoly<T>&);                               \
  template BasicPoly<T> add(const BasicPoly<T>&, const BasicPoly<T>&);                     \
  template BasicPoly<T> sub(const BasicPoly<T>&, const BasicPoly<T>&);                     \
  template BasicPoly<T> scale(const BasicPoly<T>&, const T&);                              \
  template BasicPoly<T> mul(const BasicPoly<T>&, const BasicPoly<T>&);                     \
  template BasicPoly<T> compose_affine(const BasicPoly<T>&, const T&, const T&);           \
  template BasicPoly<T> divide_linear(const BasicPoly<T>&, const T&, T*);                  \
  template T cauchy_bound(const BasicPoly<T>&);                                            \
  template T root_bound(const BasicPoly<T>&);                                              \
  template SupResult sup_abs_on(const BasicPoly<T>&, Interval, double);

QSPPOLY_INSTANTIATE(double)
QSPPOLY_INSTANTIATE(Wide)

#undef QSPPOLY_INSTANTIATE

// ---------------------------------------------------------------------------
// CenteredOddPoly

CenteredOddPoly::CenteredOddPoly(std::vector<double> odd_coeffs)
    : odd_coeffs_(std::move(odd_coeffs)) {}

int CenteredOddPoly::degree() const noexcept {
  for (std::size_t k = odd_coeffs_.size(); k-- > 0;) {
    if (odd_coeffs_[k] != 0.0) return static_cast<int>(2 * k + 1);
  }
  return 0;
}

double CenteredOddPoly::operator()(double x) const {
  const double z = x - 0.5;
  const double w = z * z;
  double acc = 0.0;
  for (auto it = odd_coeffs_.rbegin(); it != odd_coeffs_.rend(); ++it) acc = acc * w + *it;
  return 0.5 + z * acc;
}

double CenteredOddPoly::derivative_at(double x) const {
  const double z = x - 0.5;
  const double w = z * z;
  double acc = 0.0;
  for (std::size_t k = odd_coeffs_.size(); k-- > 0;) {
    acc = acc * w + static_cast<double>(2 * k + 1) * odd_coeffs_[k];
  }
  return acc;
}

Poly CenteredOddPoly::in_centered_variable() const {
  std::vector<double> c(2 * odd_coeffs_.size() + 1, 0.0);
  c[0] = 0.5;
  for (std::size_t k = 0; k < odd_coeffs_.size(); ++k) c[2 * k + 1] = odd_coeffs_[k];
  return Poly(std::move(c));
}

Poly CenteredOddPoly::derivative_in_centered_variable() const {
  return derivative(in_centered_variable());
}

Poly from_centered_odd(const CenteredOddPoly& s) {
  const auto pz = poly_cast<Wide>(s.in_centered_variable());
  return poly_cast<double>(compose_affine(pz, Wide(1), Wide(-0.5)));
}

}  // namespace qsppoly

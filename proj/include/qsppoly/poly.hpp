#pragma once

#include <initializer_list>
#include <type_traits>
#include <vector>

#include "qsppoly/wide.hpp"

namespace qsppoly {

/// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo, double hi);

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Dense real polynomial in the monomial basis; coeffs()[k] multiplies x^k.
///
/// The highest stored coefficient is never zero; the zero polynomial is the
/// empty coefficient vector. Trimming removes exact zeros only.
template <class T>
class BasicPoly {
 public:
  using value_type = T;

  BasicPoly() = default;
  explicit BasicPoly(std::vector<T> coeffs);
  BasicPoly(std::initializer_list<T> coeffs);

  static BasicPoly constant(const T& c);
  static BasicPoly monomial(int k, const T& c = T(1));

  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }
  T coeff(int k) const;

  T operator()(const std::type_identity_t<T>& x) const;

  friend bool operator==(const BasicPoly&, const BasicPoly&) = default;

 private:
  std::vector<T> coeffs_;
};

using Poly = BasicPoly<double>;
using WidePoly = BasicPoly<Wide>;

/// Horner evaluation.
template <class T>
T eval(const BasicPoly<T>& p, const std::type_identity_t<T>& x);

/// sum_k |c_k| |x|^k, the scale of rounding error when evaluating p at x.
template <class T>
T eval_magnitude(const BasicPoly<T>& p, const std::type_identity_t<T>& x);

template <class T>
BasicPoly<T> derivative(const BasicPoly<T>& p);
/// Antiderivative vanishing at x = 0.
template <class T>
BasicPoly<T> antiderivative(const BasicPoly<T>& p);

template <class T>
BasicPoly<T> add(const BasicPoly<T>& p, const BasicPoly<T>& q);
template <class T>
BasicPoly<T> sub(const BasicPoly<T>& p, const BasicPoly<T>& q);
template <class T>
BasicPoly<T> scale(const BasicPoly<T>& p, const std::type_identity_t<T>& c);
template <class T>
BasicPoly<T> mul(const BasicPoly<T>& p, const BasicPoly<T>& q);

/// Coefficients of x -> p(a*x + b), by synthetic recentering at b followed by
/// rescaling.
template <class T>
BasicPoly<T> compose_affine(const BasicPoly<T>& p, const std::type_identity_t<T>& a,
                            const std::type_identity_t<T>& b);

/// Division by (x - r). Returns the quotient; the remainder p(r) is written to
/// *remainder when given.
template <class T>
BasicPoly<T> divide_linear(const BasicPoly<T>& p, const std::type_identity_t<T>& r,
                           T* remainder = nullptr);

/// 1 + max_{k<n} |c_k / c_n|. Throws DegreeTooLow for degree < 1.
template <class T>
T cauchy_bound(const BasicPoly<T>& p);

/// min(Cauchy, Fujiwara) bound: every real root lies strictly inside (-B, B).
/// Throws DegreeTooLow for degree < 1.
template <class T>
T root_bound(const BasicPoly<T>& p);

template <class To, class From>
BasicPoly<To> poly_cast(const BasicPoly<From>& p) {
  std::vector<To> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(static_cast<To>(v));
  return BasicPoly<To>(std::move(c));
}

template <class T>
BasicPoly<T> operator+(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  return add(p, q);
}
template <class T>
BasicPoly<T> operator-(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  return sub(p, q);
}
template <class T>
BasicPoly<T> operator*(const BasicPoly<T>& p, const BasicPoly<T>& q) {
  return mul(p, q);
}
template <class T>
BasicPoly<T> operator*(const std::type_identity_t<T>& c, const BasicPoly<T>& p) {
  return scale(p, c);
}

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// max |p| over I: endpoints plus every critical point found by root isolation.
template <class T>
SupResult sup_abs_on(const BasicPoly<T>& p, Interval I, double tol = 1e-10);

/// Polynomial 1/2 + sum_k c_{2k+1} (x - 1/2)^{2k+1}; symmetric about (1/2, 1/2).
class CenteredOddPoly {
 public:
  CenteredOddPoly() = default;
  explicit CenteredOddPoly(std::vector<double> odd_coeffs);

  const std::vector<double>& odd_coeffs() const noexcept { return odd_coeffs_; }
  int degree() const noexcept;

  /// Evaluated in the centered variable.
  double operator()(double x) const;
  double derivative_at(double x) const;

  /// The same polynomial written in z = x - 1/2.
  Poly in_centered_variable() const;
  Poly derivative_in_centered_variable() const;

 private:
  std::vector<double> odd_coeffs_;
};

/// Monomial expansion in x (computed in wide precision, rounded once).
Poly from_centered_odd(const CenteredOddPoly& s);

}  // namespace qsppoly

#include "qsppoly/bernstein.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <string>

#include "qsppoly/errors.hpp"
#include "qsppoly/membership.hpp"

namespace qsppoly {

StepDomain::StepDomain(double e) : eps(e) {
  if (!(e > 0 && e < 0.5)) throw Error(ErrorCode::InvalidArgument, "step domain needs 0 < eps < 1/2");
}

namespace {

constexpr int kMaxDegree = 200;

// Row n of Pascal's triangle, exact in Wide.
std::vector<Wide> binomial_row(int n) {
  std::vector<Wide> row(static_cast<std::size_t>(n) + 1);
  row[0] = Wide(1);
  for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * Wide(n - k + 1) / Wide(k);
  return row;
}

void check_degree(int n) {
  if (n < 1 || n > kMaxDegree) {
    throw Error(ErrorCode::InvalidArgument,
                "Bernstein degree must be in [1, 200], got " + std::to_string(n));
  }
}

void check_odd(int L) {
  if (L < 1) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  if (L % 2 == 0) throw Error(ErrorCode::EvenDegree, "L must be odd, got " + std::to_string(L));
}

}  // namespace

// sum_k v_k C(n,k) x^k (1-x)^(n-k) in monomials:
// coefficient of x^j is C(n,j) sum_{k<=j} (-1)^(j-k) C(j,k) v_k.
WidePoly bernstein_basis_to_monomial(const std::vector<Wide>& v) {
  const int n = static_cast<int>(v.size()) - 1;
  const auto cn = binomial_row(n);
  std::vector<Wide> c(v.size(), Wide(0));
  std::vector<Wide> cj{Wide(1)};
  for (int j = 0; j <= n; ++j) {
    if (j > 0) cj = binomial_row(j);
    Wide s(0);
    for (int k = 0; k <= j; ++k) {
      if (v[k] == 0) continue;
      const Wide term = cj[k] * v[k];
      s += ((j - k) % 2 == 0) ? term : Wide(-term);
    }
    c[j] = cn[j] * s;
  }
  return WidePoly(std::move(c));
}

Poly bernstein(const TargetFunction& f, int n) {
  check_degree(n);
  std::vector<Wide> v(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) v[k] = Wide(f(static_cast<double>(k) / n));
  return poly_cast<double>(bernstein_basis_to_monomial(v));
}

BernsteinForm::BernsteinForm(const TargetFunction& f, int n) {
  check_degree(n);
  values_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) values_[k] = f(static_cast<double>(k) / n);
}

BernsteinForm::BernsteinForm(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "empty Bernstein coefficients");
}

namespace {

// sum_k v_k b_{n,k}(x) with the basis generated by its ratio recurrence,
// started from whichever end keeps the first term away from underflow.
double bernstein_sum(const std::vector<double>& v, double x) {
  const int n = static_cast<int>(v.size()) - 1;
  if (n == 0) return v[0];
  if (x <= 0) return v.front();
  if (x >= 1) return v.back();
  double s = 0;
  if (x <= 0.5) {
    double b = std::pow(1 - x, n);
    const double r = x / (1 - x);
    for (int k = 0; k <= n; ++k) {
      s += v[k] * b;
      b *= r * (n - k) / (k + 1);
    }
  } else {
    double b = std::pow(x, n);
    const double r = (1 - x) / x;
    for (int k = n; k >= 0; --k) {
      s += v[k] * b;
      b *= r * k / (n - k + 1);
    }
  }
  return s;
}

}  // namespace

double BernsteinForm::operator()(double x) const { return bernstein_sum(values_, x); }

double BernsteinForm::derivative_at(double x) const {
  const int n = degree();
  if (n == 0) return 0.0;
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) d[k] = n * (values_[k + 1] - values_[k]);
  return bernstein_sum(d, x);
}

double BernsteinForm::slope_bound() const {
  const int n = degree();
  double m = 0;
  for (int k = 0; k < n; ++k) m = std::max(m, std::fabs(values_[k + 1] - values_[k]));
  return n * m;
}

Poly BernsteinForm::to_monomial() const {
  std::vector<Wide> v(values_.begin(), values_.end());
  return poly_cast<double>(bernstein_basis_to_monomial(v));
}

WidePoly bernstein_step_wide(int L) {
  check_odd(L);
  std::vector<Wide> v(static_cast<std::size_t>(L) + 1, Wide(0));
  for (int k = (L + 1) / 2; k <= L; ++k) v[k] = Wide(1);
  return bernstein_basis_to_monomial(v);
}

Poly bernstein_step(int L) { return poly_cast<double>(bernstein_step_wide(L)); }

double bernstein_step_at(int L, double x) {
  check_odd(L);
  if (x < 0 || x > 1) return eval(bernstein_step_wide(L), Wide(x)).convert_to<double>();
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  // P(Binomial(L, x) >= (L+1)/2) = I_x((L+1)/2, (L+1)/2).
  const double a = (L + 1) / 2;
  return boost::math::ibeta(a, a, x);
}

bool step_parity_check(int L) {
  return check_family(bernstein_step_wide(L), Family::P).verdict == Verdict::Member;
}

StepError step_error(int L, StepDomain dom) {
  check_odd(L);
  if (L % 4 != 1) {
    throw Error(ErrorCode::PreconditionFailed, "step_error needs L = 1 (mod 4), got " + std::to_string(L));
  }
  return {bernstein_step_at(L, 0.5 - dom.eps), 2.0 * std::exp(-2.0 * L * dom.eps * dom.eps)};
}

}  // namespace qsppoly

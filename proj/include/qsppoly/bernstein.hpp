#pragma once

#include <vector>

#include "qsppoly/poly.hpp"
#include "qsppoly/target.hpp"

namespace qsppoly {

/// Gap domain [0, 1/2 - eps] ∪ [1/2 + eps, 1].
struct StepDomain {
  double eps;
  explicit StepDomain(double eps);
};

/// sum_k f(k/n) C(n,k) x^k (1-x)^(n-k) in the monomial basis, 1 <= n <= 200.
/// Expanded in wide precision with exact binomials, rounded once; the double
/// coefficients lose accuracy on [0,1] roughly like 3^n * 1e-16, so use
/// BernsteinForm when evaluating large n.
Poly bernstein(const TargetFunction& f, int n);

/// sum_k v_k C(n,k) x^k (1-x)^(n-k) in monomials, n = v.size() - 1; exact
/// binomials, wide arithmetic.
WidePoly bernstein_basis_to_monomial(const std::vector<Wide>& v);

/// The Bernstein polynomial kept in Bernstein form: stable evaluation for any n.
class BernsteinForm {
 public:
  BernsteinForm(const TargetFunction& f, int n);
  explicit BernsteinForm(std::vector<double> values);

  int degree() const noexcept { return static_cast<int>(values_.size()) - 1; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Valid for x in [0,1].
  double operator()(double x) const;
  double derivative_at(double x) const;
  /// n * max |f((k+1)/n) - f(k/n)|, an upper bound for |p'| on [0,1].
  double slope_bound() const;
  Poly to_monomial() const;

 private:
  std::vector<double> values_;
};

/// B_L Θ with exact integer coefficients (L odd).
WidePoly bernstein_step_wide(int L);
/// B_L Θ rounded to double coefficients. Exact for L <= 21; beyond that the
/// coefficients exceed 2^53 and cancellation ruins evaluation in double.
Poly bernstein_step(int L);
/// (B_L Θ)(x) via the regularized incomplete beta function, stable for any L.
double bernstein_step_at(int L, double x);

/// check_family(B_L Θ, P) == Member, evaluated on the exact coefficients.
bool step_parity_check(int L);

struct StepError {
  double measured;
  double bound;
};
/// measured = (B_L Θ)(1/2 - eps) = sup over the gap domain of |B_L Θ - Θ|;
/// bound = 2 exp(-2 L eps^2). Requires L ≡ 1 (mod 4).
StepError step_error(int L, StepDomain dom);

}  // namespace qsppoly

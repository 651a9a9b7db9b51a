#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsppoly/membership.hpp"
#include "qsppoly/poly.hpp"
#include "qsppoly/target.hpp"

namespace qsppoly {

/// r_{α,β}(x) = x^(2α+1) (1-x)^β.
struct CorrectionParams {
  int alpha = 1;
  int beta = 1;
  CorrectionParams() = default;
  CorrectionParams(int alpha, int beta);
  int degree() const noexcept { return 2 * alpha + 1 + beta; }
};

Poly r_poly(const CorrectionParams& cp);
WidePoly r_poly_wide(const CorrectionParams& cp);
/// max of r on [0,1]: (1+γ)^(-2α-1) (1+1/γ)^(-β), γ = β/(2α+1); attained at 1/(1+γ).
double r_sup(const CorrectionParams& cp);
double r_argmax(const CorrectionParams& cp);

enum class TailVariant {
  PositiveBeyond2,      // r + h > 0 for x >= 2, β even
  NegativeBeyond2,      // r + h < 0 for x >= 2, β odd
  NegativeBelowMinus1,  // r + h < 0 for x <= -1
};
enum class Parity { Even, Odd, Any };

const char* to_string(TailVariant v) noexcept;
const char* to_string(Parity p) noexcept;

/// K-based recipe: for x >= 2, K = sum |c_i| of h recentred at 1, β the
/// smallest integer > deg h of the parity, 2^(2α+1) > K; for x <= -1, K = sum
/// |c_i| of h, 2α > deg h, 2^β > K. K = 0 counts as 1. The sign condition is
/// then checked by root isolation (StructureViolation if it fails).
CorrectionParams select_tail_params(const Poly& h, TailVariant variant, Parity parity);

enum class CorrectionMode { ProofFaithful, MinimalSearch };
const char* to_string(CorrectionMode m) noexcept;
CorrectionMode correction_mode_from_string(const std::string& s);

struct PipelineTrace {
  CorrectionMode mode = CorrectionMode::MinimalSearch;
  bool corrected = false;  // false when q was already a member
  double eps_internal = 0.0;
  // Proof quantities; filled in ProofFaithful mode.
  double mu_prime = 0.0;
  double eta = 0.0;
  double eta_prime = 0.0;
  int m = 0;
  int beta0 = 0;
  double K = 0.0;
  std::array<CorrectionParams, 3> tail_params{};
  CorrectionParams final_params{};
  double sup_r = 0.0;
  int candidates_tried = 0;
  // Verdict on the exact sum q + r (wide) and on its double rounding.
  Verdict exact_verdict = Verdict::Member;
  Verdict verdict = Verdict::Member;
};

struct CorrectionResult {
  Poly u;
  WidePoly u_exact;
  PipelineTrace trace;
};

/// Exact endpoint values: c0 = 0 and c1 adjusted (in wide arithmetic) so that
/// the coefficients sum to 1 for P-like families, 0 for Q-like.
Poly pin_endpoints(const Poly& q, Family fam);

/// Checks the sign structure q must have before correction: q(0) = 0,
/// q(1) = 1 (P) or 0 (Q), 0 < q < 1 on (0,1), q < 0 on [-1,0), q > 1 (P) or
/// q < 0 (Q) on (1,2]. Returns an empty string when it holds, else the reason.
std::string step2_structure_violation(const Poly& q, Family fam, double tol = 1e-9);

/// u = q + r_{α,β} in P or Q with max r on [0,1] < eps.
///
/// MinimalSearch scans α in [1,40], β in [1,400] of the family's β parity by
/// degree, keeping only r_sup < eps, and returns the first u whose double
/// coefficients verify. ProofFaithful assembles α, β from the proof's
/// constants and verifies the exact sum.
CorrectionResult correct_to_family(const Poly& q, Family fam, double eps,
                                   CorrectionMode mode = CorrectionMode::MinimalSearch);

struct PipelineReport {
  Family family = Family::P;
  double delta = 0.0;
  int bernstein_n = 0;
  double bernstein_error = 0.0;
  int nodes = 0;
  double node_eps = 0.0;
  int q_degree = 0;
  double q_error = 0.0;  // sup |q - p| on the grid
  double tilt = 0.0;     // weight of the tilt mixed into p when B_n f is too flat
  int u_degree = 0;
  double error = 0.0;  // sup |u - f| on a 10^4-point grid
  bool zero_target = false;
  PipelineTrace trace;
  MembershipReport membership;
};

struct Approximation {
  Poly u;
  PipelineReport report;
};

/// Bernstein step, monotone interpolation through guard-extended nodes, then
/// correction, each with budget delta/3.
Approximation approximate_in_family(const TargetFunction& f, Family fam, double delta,
                                    CorrectionMode mode = CorrectionMode::MinimalSearch);

/// f given on a finite union of disjoint closed intervals A in [0,1]. f is
/// extended linearly across the gaps (with 0 at 0 and 1 or 0 at 1 when those
/// points are not in A) and approximated; the result lies in Pprime/Qprime
/// and is within eps of f on A.
Approximation approximate_on_subset(const std::vector<Interval>& A, const TargetFunction& f,
                                    Family fam, double eps);

/// The linear gap extension used by approximate_on_subset.
TargetFunction extend_across_gaps(const std::vector<Interval>& A, const TargetFunction& f,
                                  Family fam);

}  // namespace qsppoly

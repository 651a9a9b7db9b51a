#pragma once

#include <vector>

#include "qsppoly/errors.hpp"
#include "qsppoly/poly.hpp"

namespace qsppoly {

/// Interior zeros 0 < a_1 < ... < a_ell < 1/2; a_0 = 0 is implicit.
struct ZeroConfig {
  std::vector<double> a;

  ZeroConfig() = default;
  explicit ZeroConfig(std::vector<double> zeros);
  /// a_i = i * a_ell / ell.
  static ZeroConfig equispaced(int ell, double a_ell);

  int ell() const noexcept { return static_cast<int>(a.size()); }
  double at(int i) const { return i == 0 ? 0.0 : a.at(static_cast<std::size_t>(i - 1)); }
};

struct PeakData {
  std::vector<double> b;        // b_i in (a_{i-1}, a_i)
  std::vector<double> heights;  // p(b_i)
};

struct RippleBuild {
  CenteredOddPoly poly;
  double condition = 0.0;  // 1-norm condition estimate of the solved system
};

/// The member of R_ell with double zeros at the a_i: p(x) + p(1-x) = 1,
/// p(0) = 0, p(a_i) = p'(a_i) = 0. Solves the (2ell+1)-square system for the
/// odd coefficients in z = x - 1/2. IllConditioned above kMaxCondition.
RippleBuild build_R_poly(const ZeroConfig& cfg);

inline constexpr double kMaxCondition = 1e12;

/// Unique critical point in each (a_{i-1}, a_i); StructureViolation otherwise.
PeakData peaks(const CenteredOddPoly& p, const ZeroConfig& cfg);

struct PeakBounds {
  double lower = 0.0;
  double upper = 0.0;
};
/// Squeeze bounds for the height of peak i (1-based).
PeakBounds peak_bounds(const ZeroConfig& cfg, int i);

/// One exchange step between the largest and smallest peaks.
ZeroConfig iterate(const ZeroConfig& cfg, double kappa);

struct EquiRippleResult {
  ZeroConfig config;
  CenteredOddPoly poly;
  PeakData peaks;
  double delta = 0.0;  // mean peak height
  double spread = 0.0;  // (max - min) / mean of the heights
  double spread_tol = 0.0;
  double condition = 0.0;
  int rounds = 0;
  bool converged = false;        // the exchange iteration reached its fixpoint
  bool within_spread_tol = false;  // spread <= spread_tol
  double kappa = 0.0;
  bool in_P = false;
};

/// Relative spread accepted as "equal heights": 10 kappa / a_ell.
double default_spread_tol(const ZeroConfig& cfg, double kappa);

/// Iterates to a fixpoint. Without one after max_rounds throws
/// NotConvergedError carrying the last state.
EquiRippleResult equiripple_solve(const ZeroConfig& cfg0, double kappa, int max_rounds = 200);

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, EquiRippleResult last)
      : Error(ErrorCode::NotConverged, what), last_(std::move(last)) {}
  const EquiRippleResult& last() const noexcept { return last_; }

 private:
  EquiRippleResult last_;
};

struct GapReport {
  double eps = 0.0;
  double p_at_gap = 0.0;  // p(1/2 - eps)
  double delta = 0.0;
  double residual = 0.0;  // p_at_gap - delta
};
GapReport gap_report(const EquiRippleResult& res, double eps);

}  // namespace qsppoly

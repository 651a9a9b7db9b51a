#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsppoly/poly.hpp"

namespace qsppoly {

/// A continuous target f on [0,1].
///
/// Builtins: identity, square, scaled_bump (c·x(1−x), param c, default 1),
/// half_sine (sin(πx/2)), zero, theta_step (param eps; the step function,
/// meaningful only on the gap domain [0,1/2−eps] ∪ [1/2+eps,1]).
class TargetFunction {
 public:
  enum class Kind { Builtin, Table, PolyTarget, Callable };

  static TargetFunction builtin(const std::string& name, double param = 0.0);
  /// "name" or "name:param", e.g. "scaled_bump:0.9".
  static TargetFunction parse_builtin(const std::string& spec);
  /// Piecewise-linear through (xs, ys); xs strictly increasing from 0 to 1.
  static TargetFunction table(std::vector<double> xs, std::vector<double> ys);
  static TargetFunction polynomial(Poly p);
  static TargetFunction callable(std::string name, std::function<double(double)> f);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double param() const noexcept { return param_; }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }
  const Poly& poly() const noexcept { return poly_; }

  /// False only for theta_step.
  bool is_continuous() const noexcept;
  bool is_identically_zero() const;

  double operator()(double x) const;

 private:
  Kind kind_ = Kind::Builtin;
  std::string name_ = "zero";
  double param_ = 0.0;
  std::vector<double> xs_, ys_;
  Poly poly_;
  std::function<double(double)> fn_;
};

}  // namespace qsppoly

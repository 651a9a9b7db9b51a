#pragma once

#include <functional>
#include <vector>

#include "qsppoly/membership.hpp"
#include "qsppoly/poly.hpp"

namespace qsppoly {

struct Node {
  double x;
  double y;
  friend bool operator==(const Node&, const Node&) = default;
};

/// Interpolation data: x strictly increasing, consecutive y differing by at
/// least 1e-12.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<Node> nodes_;
};

/// Nodes 0 = x_1 < ... < x_N = 1 with spacing below
/// delta = min(1/2, (eps/2) / max|p'|), each new node picked in [x + delta/2,
/// x + delta) where p changes value. Throws ConstantPolynomial for constant p.
NodeSet build_nodes(const Poly& p, double eps);
/// Same, for a function given with an upper bound on |f'| over [0,1].
NodeSet build_nodes(const std::function<double(double)>& f, double slope_bound, double eps);

/// Adds (-1,-1) in front and (2,2) (P families) or (2,-1) (Q families) behind.
NodeSet guard_extend(const NodeSet& S, Family fam);

struct InterpOptions {
  /// Search starts at this degree of q (the smallest feasible by default).
  int min_degree = 0;
  /// 0 selects the cap 4|S| + 20.
  int max_degree = 0;
  /// Optional derivative to imitate between nodes; breaks ties among feasible
  /// solutions instead of the minimum-norm rule.
  std::function<double(double)> hint_derivative;
  double hint_lo = 0.0;
  double hint_hi = 1.0;
};

/// q with q(x_i) = y_i and q' of constant sign sign(y_i - y_{i-1}) on each
/// (x_{i-1}, x_i).
///
/// q' = w·π where π vanishes exactly at the turning nodes and w is a nonnegative
/// combination of Bernstein basis polynomials on [x_0, x_N]; the interpolation
/// conditions become a nonnegative least-squares problem. The degree of w grows
/// until the solution interpolates to tol and passes root-isolation checks;
/// InfeasibleAtMaxDegree once the cap is reached.
Poly monotone_interpolate(const NodeSet& S, double tol = 1e-8, const InterpOptions& opt = {});

/// Independent check used by monotone_interpolate: residuals within tol and
/// strictly signed derivative inside every interval.
bool verify_interpolant(const Poly& q, const NodeSet& S, double tol = 1e-8);

}  // namespace qsppoly

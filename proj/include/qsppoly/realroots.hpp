#pragma once

#include <optional>
#include <vector>

#include "qsppoly/poly.hpp"

namespace qsppoly {

enum class SignKind { StrictlyPositive, StrictlyNegative, NonNegative, NonPositive, Mixed };

const char* to_string(SignKind kind) noexcept;

struct SignVerdict {
  SignKind kind = SignKind::NonNegative;
  std::optional<double> witness;  // set iff kind == Mixed
  double margin = 0.0;            // min |p| over the sampled points
};

/// All real roots of p in I, sorted, without multiplicity, each accurate to tol.
///
/// Roots of p' split I into monotone pieces; a piece whose ends change sign is
/// bracketed down to width tol. A critical point (or end of I) is reported as a
/// root when a second-order Taylor estimate puts a root within tol of it, or
/// |p| there is at rounding level; this catches even-multiplicity roots that
/// never change sign.
template <class T>
std::vector<T> roots_in(const BasicPoly<T>& p, Interval I, double tol = 1e-10);

/// Sign pattern of p on I. With strict_interior the endpoints of I may be
/// zeros without spoiling a strict verdict.
template <class T>
SignVerdict sign_on(const BasicPoly<T>& p, Interval I, bool strict_interior, double tol = 1e-10);

}  // namespace qsppoly

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsppoly/poly.hpp"
#include "qsppoly/target.hpp"

namespace qsppoly {

/// P:  p ∈ [0,1] on [0,1], p ≤ 0 for x ≤ 0, p ≥ 1 for x ≥ 1.
/// Q:  as P but p ≤ 0 for x ≥ 1.
/// Pprime / Qprime: the strict versions on the open sets.
enum class Family { P, Q, Pprime, Qprime };
enum class TargetClass { F1, F2 };
enum class Verdict { Member, MemberWithinTol, NotMember };

const char* to_string(Family f) noexcept;
const char* to_string(TargetClass c) noexcept;
const char* to_string(Verdict v) noexcept;
Family family_from_string(const std::string& s);
TargetClass target_class_from_string(const std::string& s);

bool is_strict(Family f) noexcept;
/// P-like (right tail above 1) or Q-like (right tail below 0).
bool is_p_like(Family f) noexcept;

struct Witness {
  double x = 0.0;
  double value = 0.0;
  std::string clause;
};

struct ClauseMargin {
  std::string clause;
  double margin = 0.0;  // min slack; negative when violated
};

struct MembershipReport {
  Family family = Family::P;
  std::optional<TargetClass> target_class;  // set by check_target
  Verdict verdict = Verdict::Member;
  std::vector<Witness> witnesses;
  std::vector<ClauseMargin> margins;
  double checked_bound = 0.0;
  double worst_violation = 0.0;
};

/// 1e-9 unless the QSPPOLY_TOL environment variable holds a positive number.
double default_tolerance();

/// Clause (i) is checked through the extrema of p on [0,1]; clauses (ii) and
/// (iii) on [-B,0] and [1,B], where B bounds the real roots of the clause's
/// polynomial, plus the sign of the leading term beyond B.
///
/// Violations below the Horner rounding bound of the evaluation are treated as
/// exact; up to tol gives MemberWithinTol.
MembershipReport check_family(const Poly& p, Family fam, double tol = default_tolerance());
MembershipReport check_family(const WidePoly& p, Family fam, double tol = default_tolerance());

MembershipReport check_target(const TargetFunction& f, TargetClass cls,
                              double tol = default_tolerance());

/// Degree parity cross-check: odd for the P families, even for Q.
bool parity_consequence(const Poly& p, Family fam);

}  // namespace qsppoly

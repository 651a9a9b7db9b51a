#pragma once

#include <stdexcept>
#include <string>

namespace qsppoly {

enum class ErrorCode {
  InvalidArgument,
  DegreeTooLow,
  EvenDegree,
  ConstantPolynomial,
  InfeasibleAtMaxDegree,
  PreconditionFailed,
  BetaOverflow,
  TargetNotInClass,
  ConvergenceBudgetExceeded,
  IllConditioned,
  StructureViolation,
  GapInsideRippleRegion,
  NotConverged,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsppoly

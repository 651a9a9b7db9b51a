#include "qsppoly/errors.hpp"

namespace qsppoly {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::EvenDegree: return "EvenDegree";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::InfeasibleAtMaxDegree: return "InfeasibleAtMaxDegree";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BetaOverflow: return "BetaOverflow";
    case ErrorCode::TargetNotInClass: return "TargetNotInClass";
    case ErrorCode::ConvergenceBudgetExceeded: return "ConvergenceBudgetExceeded";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::GapInsideRippleRegion: return "GapInsideRippleRegion";
    case ErrorCode::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

}  // namespace qsppoly

#include "edyn/error.hpp"

namespace edyn {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::OutsideRegion: return "OutsideRegion";
    case ErrorCode::OverflowAtPoint: return "OverflowAtPoint";
    case ErrorCode::OverflowInChain: return "OverflowInChain";
    case ErrorCode::NoSampleSatisfiesConstraint: return "NoSampleSatisfiesConstraint";
    case ErrorCode::CriticalBasepoint: return "CriticalBasepoint";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NotIsolatedSingularValue: return "NotIsolatedSingularValue";
    case ErrorCode::UContainsCriticalValues: return "UContainsCriticalValues";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::ContinuationBreakdown: return "ContinuationBreakdown";
    case ErrorCode::ZeroOnContour: return "ZeroOnContour";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::NoRootInDisc: return "NoRootInDisc";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace edyn

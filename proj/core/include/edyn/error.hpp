#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edyn {

enum class ErrorCode {
    PreconditionViolation,
    OutsideRegion,
    OverflowAtPoint,
    OverflowInChain,
    NoSampleSatisfiesConstraint,
    CriticalBasepoint,
    BudgetExhausted,
    NotIsolatedSingularValue,
    UContainsCriticalValues,
    RadiusTooSmall,
    ContinuationBreakdown,
    ZeroOnContour,
    StepLimitExceeded,
    NoRootInDisc,
    NonConvergence,
    IOError,
    UsageError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported through this type.
/// The code is stable and machine readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) {
        fail(code, message);
    }
}

} // namespace edyn

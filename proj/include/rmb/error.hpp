#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmb {

enum class ErrorCode {
    DegenerateInput,
    NonFiniteInput,
    PointOutside,
    PerturbationFailed,
    ConvexityLost,
    NotGeneralPosition,
    DirectionOnConeBoundary,
    ZeroDirection,
    ZeroVector,
    SignStructureViolated,
    ParallelLines,
    OutsideOpenCone,
    InvalidP,
    BadSampleCount,
    QuadratureNoConvergence,
    TooFewPoints,
    ContinuityViolation,
    MalformedInput,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rmb

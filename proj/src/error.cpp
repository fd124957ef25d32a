#include "rmb/error.hpp"

namespace rmb {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::PerturbationFailed: return "PerturbationFailed";
    case ErrorCode::ConvexityLost: return "ConvexityLost";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::DirectionOnConeBoundary: return "DirectionOnConeBoundary";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::SignStructureViolated: return "SignStructureViolated";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::OutsideOpenCone: return "OutsideOpenCone";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::BadSampleCount: return "BadSampleCount";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ContinuityViolation: return "ContinuityViolation";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace rmb

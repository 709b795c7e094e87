#include "khessian/error.hpp"

namespace khessian {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::StarShapeViolation: return "StarShapeViolation";
    case ErrorCode::PoleSingularity: return "PoleSingularity";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::AxisDivision: return "AxisDivision";
    case ErrorCode::NewtonStall: return "NewtonStall";
    case ErrorCode::NonStarShaped: return "NonStarShaped";
    case ErrorCode::TruncationTooClose: return "TruncationTooClose";
    case ErrorCode::PoorFit: return "PoorFit";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::CriticalPointOnLevel: return "CriticalPointOnLevel";
    case ErrorCode::NotOverdetermined: return "NotOverdetermined";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace khessian

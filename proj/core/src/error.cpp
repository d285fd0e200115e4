#include "bbs/error.hpp"

namespace bbs {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidCapacity: return "InvalidCapacity";
    case ErrorCode::InvalidCell: return "InvalidCell";
    case ErrorCode::EitherCapacityInfinite: return "EitherCapacityInfinite";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::JInfinite: return "JInfinite";
    case ErrorCode::InvalidIncrement: return "InvalidIncrement";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::FloorTooLarge: return "FloorTooLarge";
    case ErrorCode::Undetermined: return "Undetermined";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::TrackedBallAbsent: return "TrackedBallAbsent";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NotInMrev: return "NotInMrev";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::WindowExceeded: return "WindowExceeded";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace bbs

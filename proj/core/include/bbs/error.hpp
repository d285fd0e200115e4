#pragma once

#include <stdexcept>
#include <string>

namespace bbs {

enum class ErrorCode {
  InvalidCapacity,
  InvalidCell,
  EitherCapacityInfinite,
  RangeViolation,
  Overflow,
  JInfinite,
  InvalidIncrement,
  ParityViolation,
  FloorTooLarge,
  Undetermined,
  OutOfWindow,
  TrackedBallAbsent,
  InvalidParams,
  TruncationTooSmall,
  NotInMrev,
  StateSpaceTooLarge,
  WindowExceeded,
  PreconditionFailed,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bbs

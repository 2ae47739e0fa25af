#pragma once

#include <stdexcept>
#include <string>

namespace kht {

enum class ErrorCode {
  CrossingMatching,
  NotPerfectMatching,
  BadOrientation,
  StrandNotFound,
  ShapeMismatch,
  BoundaryMismatch,
  NoLoopAtPosition,
  NotInvertible,
  Incompatible,
  NotClosed,
  NotTypeA,
  OrientationClash,
  CrossingArcs,
  Disconnected,
  PdSyntax,
  PdLabels,
  Unplannable,
  NotAlternating,
  BadInput,
};

const char* error_name(ErrorCode code);

/// All library failures are reported through this exception; `code()` lets
/// callers (and tests) distinguish the contract violation that occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kht

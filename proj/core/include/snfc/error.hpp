#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snfc {

/// Machine-readable failure categories shared by every module.
enum class ErrorCode {
  Parse,
  InvalidArgument,
  CycleDetected,
  SourceHasInEdge,
  SinkHasOutEdge,
  NodeCannotReachSink,
  DuplicateEdgeId,
  InsufficientConnectivity,
  LevelTooLarge,
  InstanceTooLarge,
  NotACutSet,
  DomainMismatch,
  MissingZeroElement,
  ShapeMismatch,
  Singular,
  NotFullColumnRank,
  RateExceedsMincut,
  MulticastConstructionFailed,
  FieldTooSmall,
  SearchExhausted,
  SecurityLevelTooHigh,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type carrying an ErrorCode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace snfc

#pragma once

#include <stdexcept>
#include <string>

namespace udg {

enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NonPositiveLength,
  MissingVertexCoordinates,
  DimensionTooSmall,
  LengthMismatch,
  EdgeNotFound,
  InvalidInterval,
  IterationCapExceeded,
  InvalidInputGraph,
  RodUnavailable,
  InvalidColoring,
  PartialColoring,
  TriangleInfeasible,
  DegeneracyRetryExhausted,
  NotAnEmbedding,
  DegenerateK,
  TooLarge,
  InsufficientSuccesses,
  DomainError,
  MalformedHeader,
  VertexOutOfRange,
  BadInput,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace udg

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ohmgraph {

enum class ErrorCode {
  Disconnected,
  SelfLoop,
  NonpositiveLength,
  TooFewVertices,
  OffsetOutOfRange,
  UnknownEdge,
  UnknownVertex,
  DuplicateId,
  BrokenPath,
  MassNotZero,
  SingularReducedLaplacian,
  TooManyTrees,
  RatioMismatch,
  DegeneratePivot,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ohmgraph

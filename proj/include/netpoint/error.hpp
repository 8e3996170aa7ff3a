#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netpoint {

enum class ErrorCode {
  // graph construction
  SelfLoop,
  DuplicateEdge,
  PartiallyDirectedCycle,
  DanglingReference,
  InvalidLength,
  InvalidGeometry,
  // lookups
  UnknownVertex,
  UnknownEdge,
  InvalidNetPoint,
  UnknownMark,
  // estimators
  IsolatedVertex,
  NotAPath,
  EmptyIncidenceSet,
  EmptyEdgeSelection,
  MissingTimes,
  TooFewEvents,
  TooFewRows,
  BadBandwidth,
  EmptyAttributeMatrix,
  // io
  ParseError,
  BadSpec,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace netpoint

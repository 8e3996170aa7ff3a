#include "netpoint/error.hpp"

namespace netpoint {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::PartiallyDirectedCycle: return "PartiallyDirectedCycle";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::InvalidNetPoint: return "InvalidNetPoint";
    case ErrorCode::UnknownMark: return "UnknownMark";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::EmptyIncidenceSet: return "EmptyIncidenceSet";
    case ErrorCode::EmptyEdgeSelection: return "EmptyEdgeSelection";
    case ErrorCode::MissingTimes: return "MissingTimes";
    case ErrorCode::TooFewEvents: return "TooFewEvents";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::BadBandwidth: return "BadBandwidth";
    case ErrorCode::EmptyAttributeMatrix: return "EmptyAttributeMatrix";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace netpoint

#include "snfc/error.hpp"

namespace snfc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::SourceHasInEdge: return "SourceHasInEdge";
    case ErrorCode::SinkHasOutEdge: return "SinkHasOutEdge";
    case ErrorCode::NodeCannotReachSink: return "NodeCannotReachSink";
    case ErrorCode::DuplicateEdgeId: return "DuplicateEdgeId";
    case ErrorCode::InsufficientConnectivity: return "InsufficientConnectivity";
    case ErrorCode::LevelTooLarge: return "LevelTooLarge";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NotACutSet: return "NotACutSet";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::MissingZeroElement: return "MissingZeroElement";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotFullColumnRank: return "NotFullColumnRank";
    case ErrorCode::RateExceedsMincut: return "RateExceedsMincut";
    case ErrorCode::MulticastConstructionFailed: return "MulticastConstructionFailed";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::SecurityLevelTooHigh: return "SecurityLevelTooHigh";
  }
  return "Unknown";
}

}  // namespace snfc

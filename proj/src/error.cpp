#include "khtangle/error.hpp"

namespace kht {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CrossingMatching: return "CrossingMatching";
    case ErrorCode::NotPerfectMatching: return "NotPerfectMatching";
    case ErrorCode::BadOrientation: return "BadOrientation";
    case ErrorCode::StrandNotFound: return "StrandNotFound";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::NoLoopAtPosition: return "NoLoopAtPosition";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotTypeA: return "NotTypeA";
    case ErrorCode::OrientationClash: return "OrientationClash";
    case ErrorCode::CrossingArcs: return "CrossingArcs";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::PdSyntax: return "PdSyntax";
    case ErrorCode::PdLabels: return "PdLabels";
    case ErrorCode::Unplannable: return "Unplannable";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace kht

#include "cmc/error.hpp"

namespace cmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::BehaviorMismatch: return "BehaviorMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::VerticalPoint: return "VerticalPoint";
  }
  return "Unknown";
}

}  // namespace cmc

#include "wmsf/error.hpp"

namespace wmsf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateVertexId: return "DuplicateVertexId";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::SpansComponents: return "SpansComponents";
    case ErrorCode::CycleLimitExceeded: return "CycleLimitExceeded";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::MissingVertex: return "MissingVertex";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::CrossComponent: return "CrossComponent";
    case ErrorCode::FixedSetCyclic: return "FixedSetCyclic";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NotCycleInvariant: return "NotCycleInvariant";
    case ErrorCode::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotWeightPreserving: return "NotWeightPreserving";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wmsf

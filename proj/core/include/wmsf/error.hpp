#ifndef WMSF_ERROR_HPP
#define WMSF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace wmsf {

enum class ErrorCode {
  DanglingEndpoint,
  SelfLoop,
  DuplicateVertexId,
  NotConnected,
  SpansComponents,
  CycleLimitExceeded,
  UnknownId,
  UnknownEdge,
  NonPositiveWeight,
  MissingVertex,
  InvalidCocycle,
  CrossComponent,
  FixedSetCyclic,
  DuplicateLabel,
  NotCycleInvariant,
  OverlappingBlocks,
  BadParams,
  BadProbability,
  NotAutomorphism,
  NotWeightPreserving,
  ParseError,
  // Raised when a checked post-condition fails; never a user input problem.
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for problems with caller-supplied input (as opposed to a
  /// violated internal invariant).
  bool is_validation_error() const noexcept {
    return code_ != ErrorCode::InvariantViolation;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace wmsf

#endif

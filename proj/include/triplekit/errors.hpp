#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace triplekit {

// Failure categories; the CLI maps them to exit codes (parse 2, precondition 3, numeric 4).
enum class ErrorCategory { parse, precondition, numeric };

class TripleError : public std::runtime_error {
 public:
  TripleError(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define TRIPLEKIT_ERROR(NAME, CATEGORY)                           \
  class NAME : public TripleError {                               \
   public:                                                        \
    explicit NAME(const std::string& message)                     \
        : TripleError(ErrorCategory::CATEGORY, #NAME, message) {} \
  }

TRIPLEKIT_ERROR(SchemaError, parse);

TRIPLEKIT_ERROR(MixedFactorError, precondition);
TRIPLEKIT_ERROR(UnsupportedForFactor, precondition);
TRIPLEKIT_ERROR(DimensionMismatch, precondition);
TRIPLEKIT_ERROR(InvalidSpec, precondition);
TRIPLEKIT_ERROR(NotATripotent, precondition);
TRIPLEKIT_ERROR(ZeroTripotent, precondition);
TRIPLEKIT_ERROR(NotMinimal, precondition);
TRIPLEKIT_ERROR(NotAProjection, precondition);
TRIPLEKIT_ERROR(PeirceClusterError, precondition);
TRIPLEKIT_ERROR(MissingImage, precondition);
TRIPLEKIT_ERROR(InnerProductMismatch, precondition);
TRIPLEKIT_ERROR(NotOrthogonalityPreserving, precondition);
TRIPLEKIT_ERROR(SingularOperator, precondition);
TRIPLEKIT_ERROR(NotRankOnePreserving, precondition);
TRIPLEKIT_ERROR(NotUnitary, precondition);

TRIPLEKIT_ERROR(BasisConstructionFailed, numeric);
TRIPLEKIT_ERROR(DecompositionFailed, numeric);
TRIPLEKIT_ERROR(FactorizationInconsistent, numeric);
TRIPLEKIT_ERROR(NumericalInconsistency, numeric);

#undef TRIPLEKIT_ERROR

}  // namespace triplekit

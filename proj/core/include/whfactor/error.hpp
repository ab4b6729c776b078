#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "whfactor/types.hpp"

namespace whfactor {

enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kSingularResolvent,
  kNotDichotomous,
  kProjectionMismatch,
  kPoleOnCircle,
  kPoleAtOrigin,
  kRankDeficiencyTolerance,
  kNotSelfadjoint,
  kSingularGram,
  kNormNotStrictlyContractive,
  kPencilSelectionFailed,
  kCertificationFailed,
  kSingularIPlusD,
  kSqrtBranchCut,
  kMatchingFailed,
  kSpectralContainmentViolated,
  kTailTooShort,
  kSingularSection,
  kParseError,
  kIoError,
};

/// Stable identifier, e.g. "NotDichotomous".
std::string_view to_string(ErrorKind kind);

/// True for kinds that report a failed mathematical hypothesis (the input
/// violates a precondition of the theory) rather than a numerical or I/O
/// fault. The CLI maps these to exit code 2.
bool is_check_failure(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<Complex> location = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }

  /// Offending point for SingularResolvent (the pole nearest to the
  /// evaluation point), when known.
  const std::optional<Complex>& location() const noexcept { return location_; }

 private:
  ErrorKind kind_;
  std::optional<Complex> location_;
};

}  // namespace whfactor

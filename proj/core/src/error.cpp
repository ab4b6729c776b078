#include "whfactor/error.hpp"

namespace whfactor {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kSingularResolvent: return "SingularResolvent";
    case ErrorKind::kNotDichotomous: return "NotDichotomous";
    case ErrorKind::kProjectionMismatch: return "ProjectionMismatch";
    case ErrorKind::kPoleOnCircle: return "PoleOnCircle";
    case ErrorKind::kPoleAtOrigin: return "PoleAtOrigin";
    case ErrorKind::kRankDeficiencyTolerance: return "RankDeficiencyTolerance";
    case ErrorKind::kNotSelfadjoint: return "NotSelfadjoint";
    case ErrorKind::kSingularGram: return "SingularGram";
    case ErrorKind::kNormNotStrictlyContractive: return "NormNotStrictlyContractive";
    case ErrorKind::kPencilSelectionFailed: return "PencilSelectionFailed";
    case ErrorKind::kCertificationFailed: return "CertificationFailed";
    case ErrorKind::kSingularIPlusD: return "SingularIPlusD";
    case ErrorKind::kSqrtBranchCut: return "SqrtBranchCut";
    case ErrorKind::kMatchingFailed: return "MatchingFailed";
    case ErrorKind::kSpectralContainmentViolated: return "SpectralContainmentViolated";
    case ErrorKind::kTailTooShort: return "TailTooShort";
    case ErrorKind::kSingularSection: return "SingularSection";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_check_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotDichotomous:
    case ErrorKind::kPoleOnCircle:
    case ErrorKind::kPoleAtOrigin:
    case ErrorKind::kNotSelfadjoint:
    case ErrorKind::kSingularGram:
    case ErrorKind::kNormNotStrictlyContractive:
    case ErrorKind::kCertificationFailed:
    case ErrorKind::kSingularIPlusD:
    case ErrorKind::kSqrtBranchCut:
    case ErrorKind::kMatchingFailed:
    case ErrorKind::kSingularSection:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<Complex> location)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      location_(location) {}

}  // namespace whfactor

#include "kls/error.hpp"

namespace kls {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegreeExceedsRank: return "DegreeExceedsRank";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::MismatchedCarrier: return "MismatchedCarrier";
    case ErrorCode::MirrorConstraintViolated: return "MirrorConstraintViolated";
    case ErrorCode::NotRanked: return "NotRanked";
    case ErrorCode::NotLowerEulerian: return "NotLowerEulerian";
    case ErrorCode::InvalidSubdivision: return "InvalidSubdivision";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::AssemblyInconsistent: return "AssemblyInconsistent";
    case ErrorCode::NonIntegralCharacter: return "NonIntegralCharacter";
    case ErrorCode::NotASimplex: return "NotASimplex";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace kls

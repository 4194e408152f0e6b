#include "bethepop/error.hpp"

namespace bp {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroStep: return "ZeroStep";
    case ErrorCode::NonDivisible: return "NonDivisible";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::Infertile: return "Infertile";
    case ErrorCode::AmbiguousSolution: return "AmbiguousSolution";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::PopulationOverflow: return "PopulationOverflow";
    case ErrorCode::PathDependence: return "PathDependence";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::SingularConfiguration: return "SingularConfiguration";
    case ErrorCode::RationalizationRejected: return "RationalizationRejected";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NonGeneric: return "NonGeneric";
    case ErrorCode::DescendantNotOffDiagonal: return "DescendantNotOffDiagonal";
  }
  return "Unknown";
}

}  // namespace bp

#include "dcmoreau/error.hpp"

namespace dcm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::EigenvalueOutOfRange: return "EigenvalueOutOfRange";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InnerSolverDiverged: return "InnerSolverDiverged";
    case ErrorCode::MissingOracles: return "MissingOracles";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::AdmissibilityViolation: return "AdmissibilityViolation";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
  }
  return "Unknown";
}

}  // namespace dcm

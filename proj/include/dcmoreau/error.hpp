#pragma once

#include <stdexcept>
#include <string>

namespace dcm {

enum class ErrorCode {
  InvalidArgument = 1,
  NotSymmetric,
  EigenvalueOutOfRange,
  NotPositiveDefinite,
  DimensionMismatch,
  SingularSystem,
  InnerSolverDiverged,
  MissingOracles,
  NotAdmissible,
  AdmissibilityViolation,
  UnknownSuite,
  ConfigParse,
  Io,
  DimensionTooLarge,
  DomainMismatch,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcm

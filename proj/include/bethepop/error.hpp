#pragma once

#include <stdexcept>
#include <string>

namespace bp {

enum class ErrorCode {
  InvalidType,
  UnsupportedType,
  InvalidInput,
  ZeroStep,
  NonDivisible,
  Undefined,
  Infertile,
  AmbiguousSolution,
  IdentityViolation,
  PopulationOverflow,
  PathDependence,
  MissingNode,
  SingularConfiguration,
  RationalizationRejected,
  ZeroVector,
  NonGeneric,
  DescendantNotOffDiagonal,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int detail = 0)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(detail) {}
  ErrorCode code() const noexcept { return code_; }
  // kernel dimension for AmbiguousSolution, otherwise unused
  int detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  int detail_;
};

}  // namespace bp

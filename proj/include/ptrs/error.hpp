#pragma once

#include <stdexcept>
#include <string>

namespace ptrs {

enum class ErrorCode {
  InvalidPosition,
  InvalidWeights,
  Syntax,
  ArityInconsistency,
  UnknownToken,
  FreeVariableOnRhs,
  VariableLhs,
  EmptyRule,
  DegreeOverflow,
  NotOriented,
  MonotonicityViolation,
  IncompleteModel,
  SolverError,
  CertificateParse,
  NodeBudgetExceeded,
  Usage,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can distinguish e.g. a parse error from a bad model.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptrs

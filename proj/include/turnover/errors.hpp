#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turnover {

// Failure conditions surfaced by the geometric kernels and solvers.
// Solvers on hot paths report these through outcome structs; the public
// API wrappers throw `Error` carrying the same code.
enum class Err {
  None = 0,
  DegenerateInput,
  NotUltraparallel,
  NotOnSlice,
  IndeterminateOrder,
  NotAnEigenvalue,
  RepeatedEigenvalueAmbiguity,
  NotStable,
  DegenerateClass,
  ConditionC1Violated,
  DeltaNegative,
  ResidualTooLarge,
  Infeasible,
  NonGenericBoundary,
  EmptyEnumeration,
  NonEllipticHolonomy,
  NumericalInstability,
  DegenerateBasePoint,
  BudgetExceeded,
};

constexpr std::string_view to_string(Err e) {
  switch (e) {
    case Err::None: return "None";
    case Err::DegenerateInput: return "DegenerateInput";
    case Err::NotUltraparallel: return "NotUltraparallel";
    case Err::NotOnSlice: return "NotOnSlice";
    case Err::IndeterminateOrder: return "IndeterminateOrder";
    case Err::NotAnEigenvalue: return "NotAnEigenvalue";
    case Err::RepeatedEigenvalueAmbiguity: return "RepeatedEigenvalueAmbiguity";
    case Err::NotStable: return "NotStable";
    case Err::DegenerateClass: return "DegenerateClass";
    case Err::ConditionC1Violated: return "ConditionC1Violated";
    case Err::DeltaNegative: return "DeltaNegative";
    case Err::ResidualTooLarge: return "ResidualTooLarge";
    case Err::Infeasible: return "Infeasible";
    case Err::NonGenericBoundary: return "NonGenericBoundary";
    case Err::EmptyEnumeration: return "EmptyEnumeration";
    case Err::NonEllipticHolonomy: return "NonEllipticHolonomy";
    case Err::NumericalInstability: return "NumericalInstability";
    case Err::DegenerateBasePoint: return "DegenerateBasePoint";
    case Err::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& detail = "") {
  throw Error(code, detail);
}

}  // namespace turnover

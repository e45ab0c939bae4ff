#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratode {

/// Machine-readable failure categories shared by the library and the CLI.
enum class ErrorCode {
  ParseError,
  NotPolynomialInY,
  DivisionByZero,
  DivisionInexact,
  MissingBinding,
  NonFiniteResult,
  ZeroDenominator,
  DegenerateStructure,
  ExhaustedRetries,
  DegreeMismatch,
  RestrictionViolated,
  SuppliedA2Invalid,
  ParticularSolutionInvalid,
  PoleEncountered,
  StepFailure,
  BranchLimitExceeded,
  SearchExhausted,
  InvalidArgument,
};

constexpr std::string_view code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPolynomialInY: return "NotPolynomialInY";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DivisionInexact: return "DivisionInexact";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::DegenerateStructure: return "DegenerateStructure";
    case ErrorCode::ExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::RestrictionViolated: return "RestrictionViolated";
    case ErrorCode::SuppliedA2Invalid: return "SuppliedA2Invalid";
    case ErrorCode::ParticularSolutionInvalid: return "ParticularSolutionInvalid";
    case ErrorCode::PoleEncountered: return "PoleEncountered";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::BranchLimitExceeded: return "BranchLimitExceeded";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by the trajectory integrator; carries the last abscissa reached safely.
class PoleEncountered : public Error {
 public:
  PoleEncountered(double last_safe_x, const std::string& what)
      : Error(ErrorCode::PoleEncountered, what), last_safe_x_(last_safe_x) {}

  double last_safe_x() const noexcept { return last_safe_x_; }

 private:
  double last_safe_x_;
};

}  // namespace ratode

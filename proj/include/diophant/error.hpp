#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diophant {

enum class ErrorKind {
  unknown_constant,
  log_of_zero,
  syntax,
  parameter_gap,
  zero_divisor,
  invalid_parameter,
  eval_singular,
  domain_error,
  inadmissible,
  zero_target,
  target_representable,
  zero_model_value,
  invalid_argument,
  insufficient_precision,
  not_irrational,
  budget_exceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::unknown_constant: return "UnknownConstant";
    case ErrorKind::log_of_zero: return "LogOfZero";
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::parameter_gap: return "ParameterGap";
    case ErrorKind::zero_divisor: return "ZeroDivisor";
    case ErrorKind::invalid_parameter: return "InvalidParameter";
    case ErrorKind::eval_singular: return "EvalSingular";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::inadmissible: return "Inadmissible";
    case ErrorKind::zero_target: return "ZeroTarget";
    case ErrorKind::target_representable: return "TargetRepresentable";
    case ErrorKind::zero_model_value: return "ZeroModelValue";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::insufficient_precision: return "InsufficientPrecision";
    case ErrorKind::not_irrational: return "NotIrrational";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable taxonomy the
/// CLI maps to exit codes; `position()` is only meaningful for model syntax
/// errors (byte offset into the source text).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t position = npos)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ErrorKind kind_;
  std::size_t position_;
};

namespace detail {

// Raised inside an attempt at some working precision when the enclosure is
// too wide to decide; the caller escalates precision or converts it to Error.
struct Unresolved {
  ErrorKind kind;
  const char* message;
};

}  // namespace detail
}  // namespace diophant

#pragma once

#include <stdexcept>
#include <string>

namespace stiffcrowd {

enum class ErrorKind {
  SpecOutsideDomain,
  ValueOutOfRange,
  DomainError,
  RangeError,
  InvalidArgument,
  DomainOverflow,
  NonFiniteValue,
  MismatchedRun,
  RequiresDiffusion,
  EmptySaturatedSet,
  LevelNotBracketed,
  DegenerateBlock,
  VelocityNotDecreasing,
  NonPositiveVelocity,
  OrderingViolated,
  StepCollapse,
  ParseError,
  ValidationError,
  UnknownSuite,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library. `kind()` identifies the failure;
/// `subject()` carries the offending config key, when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string subject = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }
  /// Text without the kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string subject_;
  std::string message_;
};

}  // namespace stiffcrowd

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SpecOutsideDomain: return "SpecOutsideDomain";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainOverflow: return "DomainOverflow";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::MismatchedRun: return "MismatchedRun";
    case ErrorKind::RequiresDiffusion: return "RequiresDiffusion";
    case ErrorKind::EmptySaturatedSet: return "EmptySaturatedSet";
    case ErrorKind::LevelNotBracketed: return "LevelNotBracketed";
    case ErrorKind::DegenerateBlock: return "DegenerateBlock";
    case ErrorKind::VelocityNotDecreasing: return "VelocityNotDecreasing";
    case ErrorKind::NonPositiveVelocity: return "NonPositiveVelocity";
    case ErrorKind::OrderingViolated: return "OrderingViolated";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string subject)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      subject_(std::move(subject)),
      message_(message) {}

}  // namespace stiffcrowd

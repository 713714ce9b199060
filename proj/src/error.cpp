#include "egr/error.hpp"

namespace egr {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NotRealizable: return "not_realizable";
    case ErrorKind::OutOfDomain: return "out_of_domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::HypothesisViolated: return "hypothesis_violated";
    case ErrorKind::AngleCondition: return "angle_condition";
    case ErrorKind::Coincident: return "coincident";
    case ErrorKind::InvariantFailure: return "invariant_failure";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace egr

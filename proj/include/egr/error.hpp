#pragma once

#include <stdexcept>
#include <string>

namespace egr {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  CapExceeded,
  Degenerate,
  NotRealizable,
  OutOfDomain,
  Precondition,
  HypothesisViolated,
  AngleCondition,
  Coincident,
  InvariantFailure,
  Indeterminate,
  Parse,
};

const char* kind_name(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace egr

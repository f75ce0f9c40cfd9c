#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace residua {

enum class ErrorKind {
  CycleDetected,
  UnknownElement,
  NotALattice,
  NoBottom,
  NoTop,
  NotBelow,
  BudgetExceeded,
  TooLarge,
  InvalidGroup,
  NotT1,
  BoundTooSmall,
  PreconditionFailed,
  DimensionMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as this exception;
/// `kind()` lets callers branch on the category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace residua

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tslice {

enum class ErrorKind {
  UnknownEntity,
  OutsideLifeSpan,
  UnknownPredicate,
  UnknownSymbol,
  ArityMismatch,
  MultipleHoles,
  MissingMeasure,
  UnknownCollection,
  UnknownStatement,
  EmptyDenominator,
  NotASubset,
  TickMismatch,
  MalformedStatement,
  UnboundedSpan,
  InvalidWorld,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the calculus carries one of the kinds above so that
// callers (reading evaluation, the CLI) can turn it into a value.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace tslice

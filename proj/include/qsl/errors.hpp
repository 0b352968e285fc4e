#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsl {

enum class ErrorKind {
  NotNormalized,
  NotPositive,
  NotHermitian,
  NotTraceless,
  DimensionMismatch,
  StepCountTooSmall,
  GridMismatch,
  ParameterOutOfRange,
  IndexOutOfRange,
  DomainError,
  NegativeEnergy,
  TooFewSamples,
  PureCheckOnMixedRun,
  TruncationLeakage,
  BadConfig,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every domain failure; `kind()` lets callers
/// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsl

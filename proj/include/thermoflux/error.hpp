#pragma once

#include <stdexcept>
#include <string>

namespace thermoflux {

enum class ErrorKind {
  EmptyVector,
  NegativePopulation,
  NotNormalized,
  NotHermitian,
  NotPositiveSemidefinite,
  InvalidSystem,
  InvalidRank,
  DimensionMismatch,
  BetaMismatch,
  OutOfRange,
  OutOfRangeEntry,
  InvalidInput,
  NumericalFailure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thermoflux

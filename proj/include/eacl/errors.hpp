#pragma once

#include <stdexcept>
#include <string>

namespace eacl {

// Bad user input: malformed config or CSV, invalid parameter values,
// degenerate datasets. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request outside what the identified models cover. Exit code 3.
class ModelDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class VoltageOutOfDomain : public ModelDomainError {
 public:
  VoltageOutOfDomain(double voltage, double limit)
      : ModelDomainError("voltage " + std::to_string(voltage) +
                         " V outside validated domain [0, " +
                         std::to_string(limit) + "] V"),
        voltage_(voltage),
        limit_(limit) {}

  double voltage() const { return voltage_; }
  double limit() const { return limit_; }

 private:
  double voltage_;
  double limit_;
};

class MissingParameterSet : public ModelDomainError {
 public:
  explicit MissingParameterSet(double frequency)
      : ModelDomainError("missing parameter set: no AC parameters identified for " +
                         std::to_string(frequency) + " Hz"),
        frequency_(frequency) {}

  double frequency() const { return frequency_; }

 private:
  double frequency_;
};

class RankDeficientData : public InputError {
 public:
  using InputError::InputError;
};

class InsufficientHorizon : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace eacl

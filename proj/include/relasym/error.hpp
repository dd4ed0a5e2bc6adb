#pragma once

#include <stdexcept>
#include <string>

namespace relasym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument on or too close to the cut [-1,1].
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration (bad spec, overlapping disks, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Numerical failures: singular systems, non-converging discretizations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public NumericalError {
 public:
  SingularSystem(const std::string& what, double cond)
      : NumericalError(what + " (condition estimate " + std::to_string(cond) + ")"), cond_(cond) {}
  double condition() const { return cond_; }

 private:
  double cond_;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace relasym

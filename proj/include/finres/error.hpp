#pragma once

#include <stdexcept>
#include <string>

namespace finres {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, invariant violations, bad configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation (log of a
/// nonpositive number, all-zero response path, ...).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical breakdown: singular systems, failed factorizations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised by the sampler; carries the Gibbs iteration where it failed.
class SamplerError : public NumericalError {
 public:
  SamplerError(const std::string& what, long iteration)
      : NumericalError(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  long iteration() const noexcept { return iteration_; }

 private:
  long iteration_;
};

/// File system and stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace finres

#pragma once

#include <stdexcept>
#include <string>

namespace hermflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated preconditions, unknown catalogue entries, dimension
/// mismatches. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance (quadrature, step
/// control, fitting). The CLI maps these to exit code 3.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace hermflow

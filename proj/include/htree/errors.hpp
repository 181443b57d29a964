#pragma once

#include <stdexcept>
#include <string>

namespace htree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A word contains a label outside the alphabet allowed at its position,
/// or an argument is outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested depth would exceed the configured cylinder budget.
class DepthLimitError : public Error {
 public:
  using Error::Error;
};

/// A meromorphic quantity was evaluated at one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Linear system with a pivot below the singularity threshold.
class SingularSystem : public Error {
 public:
  SingularSystem(int level, const std::string& what)
      : Error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

class NotEigenfunction : public Error {
 public:
  NotEigenfunction(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace htree

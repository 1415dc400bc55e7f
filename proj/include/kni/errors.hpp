#pragma once

#include <stdexcept>
#include <string>

namespace kni {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& where)
      : Error("division by zero in " + where) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation hit a vanishing denominator.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

/// Numerical integration could not proceed (step underflow, step budget).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace kni

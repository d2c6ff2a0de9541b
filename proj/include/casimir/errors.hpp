#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation is not defined for the given dispersion model variant.
class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of subdivisions before meeting tolerance.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double value, double error)
      : std::runtime_error(what), partial_value(value), partial_error(error) {}

  double partial_value;
  double partial_error;
};

/// Input file missing, unreadable or malformed.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw DomainError(message);
}

}  // namespace detail

}  // namespace casimir

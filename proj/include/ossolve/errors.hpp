#pragma once

#include <stdexcept>
#include <string>

namespace ossolve {

// Base class for every error the library raises on purpose. Callers that
// want a single catch site can catch this; the CLI maps subtypes to exit
// codes (config/usage -> 2, numerical failure -> 3).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A series failed its stopping rule within the term budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// No evaluation path meets its stated accuracy bound.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its panel budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// No truncation point satisfies the tail bound (integrand does not decay).
class TailError : public Error {
 public:
  using Error::Error;
};

// Iterative root/eigenvalue search did not converge.
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

// A scan failed to locate the requested root.
class NoRootFoundError : public Error {
 public:
  using Error::Error;
};

// Converged eigenvector fails the spectral-resolution check.
class SpuriousModeError : public Error {
 public:
  using Error::Error;
};

// Degenerate collocation domain map.
class SingularMapError : public Error {
 public:
  using Error::Error;
};

// Finite inputs produced a non-finite result.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-schema run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ossolve

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqsci {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 means "not line specific".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The two-electron tensor is not positive semidefinite.
class NonPsdError : public Error {
 public:
  explicit NonPsdError(double pivot)
      : Error("two-electron integrals are not positive semidefinite (pivot " +
              std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// Iterative eigensolver gave up.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Requested particle-number / spin sector is not handled by the method.
class UnsupportedSector : public Error {
 public:
  using Error::Error;
};

/// Full-space enumeration refused because the sector is too large.
class DimensionCapError : public Error {
 public:
  DimensionCapError(std::size_t dimension, std::size_t cap)
      : Error("sector dimension " + std::to_string(dimension) + " exceeds cap " +
              std::to_string(cap)),
        dimension_(dimension) {}
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

/// Monte Carlo run could not continue (collapse, degenerate walker, no statistics).
class SimulationError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace dqsci

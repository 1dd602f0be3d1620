#pragma once

#include <stdexcept>
#include <string>

namespace supint {

// Invalid parameters, states or configuration (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation at a state with q_i = 0 while b_i > 0.
class SingularStateError : public ValidationError {
 public:
  explicit SingularStateError(const std::string& what) : ValidationError(what) {}
};

// Request outside the supported regime, e.g. closed form with E <= 0 or c = 0
// (CLI exit code 3).
class UnsupportedRegimeError : public std::runtime_error {
 public:
  explicit UnsupportedRegimeError(const std::string& what) : std::runtime_error(what) {}
};

// Solver breakdown: non-convergence or a singularity crossing during
// integration (CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside an operation's mathematical domain, e.g. a radius below
// the pericenter of an orbit.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace supint

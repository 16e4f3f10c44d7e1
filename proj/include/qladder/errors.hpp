#pragma once

#include <stdexcept>
#include <string>

namespace qladder {

// Argument outside the mathematical domain of an operation (a <= 0, delta <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation requested at (or within the guard distance of) a ladder pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root refinement called on an interval without a sign change.
class InvalidBracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters at which a closed form collapses (double poles, zero vectors).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative method exhausted its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qladder

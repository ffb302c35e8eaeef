#pragma once

#include <stdexcept>
#include <string>

namespace gaussweyl {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// s lies on [1, inf), where the inverse time change has its branch cut.
class BranchCutError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A kernel or trial function is not integrable against the requested weight.
class IntegrabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature did not settle when the node count was doubled.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaussweyl

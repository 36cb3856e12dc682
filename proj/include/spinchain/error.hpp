#pragma once

#include <stdexcept>

namespace spinchain {

/// Malformed input: bad lengths, non-positive couplings, out-of-range sites.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on input that violates its structural precondition
/// (e.g. parity reduction of a matrix that is not centrosymmetric).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested spectrum cannot be realized by a centrosymmetric chain.
class NotRealizableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No admissible transfer plan exists for the requested parameters.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical evolution refused (time beyond the configured ceiling).
class EvaluationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinchain

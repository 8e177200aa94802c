#pragma once

#include <stdexcept>
#include <string>

namespace srlnc {

// Caller passed inconsistent arguments (mismatched fields, bad shapes, bad flags).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation (inverse of zero, i >= n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A probability left [0,1] by more than the roundoff allowance.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive oracle refused an instance that is too large to enumerate.
class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Conditioned sampling gave up because the acceptance rate collapsed.
class RejectionSamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace srlnc

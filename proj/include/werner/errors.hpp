#pragma once

#include <stdexcept>
#include <string>

namespace werner {

/// Violated precondition on an argument (bad shape, bad subsystem, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state claimed to be a singlet behaves inconsistently under the group action.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact counting identity failed on sampled singlet states.
class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace werner

#pragma once

#include <iostream>
#include <stdexcept>
#include <string>

namespace rkhs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the kernel's domain, division by a vanishing kernel value, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dimension / sample mismatches between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A contract violation (non-Hermitian input, unmet precondition).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Element values outside the column space of the kernel matrix.
class MembershipError : public Error {
 public:
  using Error::Error;
};

class EmptySubspaceError : public Error {
 public:
  using Error::Error;
};

// A matrix that was required to be PSD is not; carries the offending eigenvalue.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

// CNP test failed; certificate is the negative eigenvalue of [1 - 1/s].
class CnpError : public NotPsdError {
 public:
  using NotPsdError::NotPsdError;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline void warn(const std::string& message) {
  std::cerr << "[rkhs] warning: " << message << "\n";
}

}  // namespace rkhs

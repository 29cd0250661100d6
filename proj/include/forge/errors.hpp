#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad syntax, unknown names, malformed numbers.
class InputError : public Error {
 public:
  using Error::Error;
};

// Shape or ring mismatch between operands.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A grading violation: an inhomogeneous polynomial, vector or map.
class InhomogeneousError : public Error {
 public:
  using Error::Error;
};

// Arithmetic outside the domain of an operation (division by zero, improper ideal).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A precondition of a construction failed; `code` is the machine-readable verdict.
class Rejected : public Error {
 public:
  Rejected(std::string code, const std::string& what) : Error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// An internal invariant was violated; this always indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace forge

#pragma once

#include <stdexcept>
#include <string>

namespace hadchan {

// Error taxonomy shared by the C++ core and mirrored one-to-one by the
// status codes of the public C API (include/hadchan.h).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not match the operation's contract.
class DimensionError : public Error {
public:
  using Error::Error;
};

// A scalar argument is outside its admissible range (p < 1, trace != 1, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A matrix required to be positive semidefinite has an eigenvalue below the
// clamping band. Carries the offending eigenvalue.
class NotPsdError : public Error {
public:
  NotPsdError(const std::string& what, double eigenvalue)
      : Error(what), offending_eigenvalue(eigenvalue) {}
  double offending_eigenvalue;
};

// An iterative numeric routine failed to converge.
class NumericError : public Error {
public:
  NumericError(const std::string& what, long iterations)
      : Error(what), iterations(iterations) {}
  long iterations;
};

// Malformed or invariant-violating serialized input.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace hadchan

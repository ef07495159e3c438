#pragma once

#include <stdexcept>
#include <string>

namespace k3acm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad lattice files, dimension mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateLattice : public InputError {
 public:
  using InputError::InputError;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The query lies outside the range a classification covers.
class OutOfScope : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace k3acm

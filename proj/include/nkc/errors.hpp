#pragma once

#include <stdexcept>
#include <string>

namespace nkc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with arguments outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Linear-algebra data at a point fails to define an almost Hermitian structure.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A (3,0)-form or similar structure tensor vanishes where it must not.
class DegenerateStructureError : public Error {
 public:
  using Error::Error;
};

/// The background does not carry the data an operation needs (e.g. no Ω).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// A mesh face is too small to carry a tangent estimate.
class MeshQualityError : public Error {
 public:
  using Error::Error;
};

}  // namespace nkc

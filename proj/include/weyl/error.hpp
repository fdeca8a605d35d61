#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested lambda sits on the spectrum; shift it and retry.
class SpectrumError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Point pair on (or past) the cut locus: the shortest lift is not unique.
class AmbiguityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Feature not available for this manifold / derivative combination.
class UnsupportedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An enumeration or table would exceed its configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace weyl

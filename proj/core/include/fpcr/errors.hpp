#pragma once

#include <stdexcept>
#include <string>

namespace fpcr {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid has too few points for the requested operation.
class InvalidGridError : public Error {
 public:
  using Error::Error;
};

/// Operands live on incompatible grids or have mismatched lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Fewer observations than the operation requires.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine (eigensolver, Cholesky) failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Negative power of an operator requested past its numerical rank.
class SingularOperatorError : public Error {
 public:
  using Error::Error;
};

/// Regression design is rank-deficient at the requested truncation level.
class SingularDesignError : public Error {
 public:
  using Error::Error;
};

/// Input data carry no usable variation.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a documented size limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpcr

#pragma once

#include <stdexcept>
#include <string>

namespace imsel {

/// Base class for all data/numeric failures raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Design matrix is (numerically) rank deficient.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// Residual scale is zero: the data are fitted exactly and the
/// standardized association is undefined.
class DegenerateResidual : public Error {
 public:
  using Error::Error;
};

/// Fewer rows than the fit requires (n must exceed p + 1).
class TooFewRows : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization failed: the matrix is not numerically
/// positive definite.
class CholeskyFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-numeric CSV input.
class CsvError : public Error {
 public:
  using Error::Error;
};

}  // namespace imsel

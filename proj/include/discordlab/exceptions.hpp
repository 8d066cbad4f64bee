#pragma once

#include <stdexcept>
#include <string>

namespace discordlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its documented domain.
struct DomainError : Error {
  using Error::Error;
};

/// The 4x4 covariance matrix is not symmetric positive definite.
struct NonPositiveMatrix : Error {
  using Error::Error;
};

/// delta^2 - 4*I4 is negative beyond tolerance; the symplectic spectrum
/// of the input would be complex, which no valid covariance produces.
struct ComplexEigenvalue : Error {
  using Error::Error;
};

/// A 4x4 matrix has off-standard-form entries above tolerance.
struct NotStandardForm : Error {
  NotStandardForm(const std::string& msg, double offender, int row, int col)
      : Error(msg), largest_offender(offender), offender_row(row), offender_col(col) {}
  double largest_offender;
  int offender_row;
  int offender_col;
};

/// Squeezer variances violate the uncertainty product.
struct UnphysicalSqueezer : Error {
  using Error::Error;
};

/// A 2x2 system that must be invertible for physical inputs was not.
struct SingularMatrix : Error {
  using Error::Error;
};

/// Cholesky factorization of the sampling covariance failed.
struct FactorizationFailure : Error {
  using Error::Error;
};

/// Too few samples (or resamples) for the requested estimate.
struct InsufficientData : Error {
  using Error::Error;
};

/// Too many bootstrap resamples were unphysical beyond statistical scale.
struct DegenerateBootstrap : Error {
  using Error::Error;
};

/// Scenario configuration is invalid; message names the offending field.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace discordlab

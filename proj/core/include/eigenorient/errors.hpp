#pragma once

#include <stdexcept>
#include <string>

namespace eigenorient {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix/vector shapes are inconsistent with each other or with the call.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An eigenvector matrix failed the orthonormality gate, or an arcsine
/// quotient drifted past its clamping tolerance. Carries the offending
/// residual so callers can report how far off the input was.
class NonOrthonormalInput : public Error {
 public:
  NonOrthonormalInput(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

/// A Givens axis or subspace index is outside [0, n) / [1, n].
class AxisOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The working pivot handed to the angle solver is negative, i.e. the
/// caller skipped the reflection step that must precede angle solving.
class PivotNegative : public Error {
 public:
  using Error::Error;
};

/// The resultant vector of a directional sample is (numerically) zero,
/// so no mean direction exists.
class UndefinedMeanDirection : public Error {
 public:
  using Error::Error;
};

/// The column-normalized mean basis is too far from any orthogonal matrix
/// for its polar form to be meaningful.
class NonOrthogonalMean : public Error {
 public:
  NonOrthogonalMean(const std::string& what, double correction)
      : Error(what), correction_(correction) {}
  double correction() const noexcept { return correction_; }

 private:
  double correction_ = 0.0;
};

/// An ensemble is too small or too collapsed for dispersion estimation.
class DegenerateEnsemble : public Error {
 public:
  using Error::Error;
};

/// A retained regression column carries (numerically) zero variance.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// A directional-statistics routine was asked for an unsupported dimension.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// Wraps an error thrown while processing one window of a rolling
/// computation, tagging it with the window index.
class WindowError : public Error {
 public:
  WindowError(long window_index, const std::string& what)
      : Error("window " + std::to_string(window_index) + ": " + what),
        window_index_(window_index) {}
  long window_index() const noexcept { return window_index_; }

 private:
  long window_index_ = 0;
};

}  // namespace eigenorient

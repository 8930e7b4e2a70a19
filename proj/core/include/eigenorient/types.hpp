#pragma once

#include <Eigen/Dense>

#include "eigenorient/errors.hpp"

namespace eigenorient {

/// Default gate on max|V^T V - I| for inputs claiming to be orthonormal.
inline constexpr double kDefaultOrthonormalityTol = 1e-8;

/// Arcsine quotients may exceed 1 by at most this much before the input is
/// rejected as non-orthonormal; anything within is clamped to [-1, 1].
inline constexpr double kArcsineClampTol = 1e-9;

/// Below this running cosine product the remaining angles of a subspace are
/// unconstrained and are set to zero.
inline constexpr double kCosineProductFloor = 1e-12;

/// How negative a working pivot may be before the angle solver refuses it.
inline constexpr double kPivotTol = 1e-9;

/// Sentinel reported for the concentration of a fully collapsed subspace
/// (mean resultant length 1); also the cap for refined estimates.
inline constexpr double kKappaCap = 1e12;

/// Raw decomposition output: eigenvector columns and their eigenvalues, as
/// returned by any eigendecomposition or SVD routine.
struct EigenSystem {
  Eigen::MatrixXd V;        ///< n x n, columns are eigenvectors
  Eigen::VectorXd lambdas;  ///< n eigenvalues (any real values)

  Eigen::Index dim() const { return V.rows(); }

  /// max|V^T V - I|.
  double orthonormality_residual() const;

  /// Throws DimensionMismatch / NonOrthonormalInput if the invariants fail.
  void validate(double orthonormality_tol = kDefaultOrthonormalityTol) const;
};

/// Strictly upper-triangular matrix of Givens angles in radians, each
/// restricted to [-pi/2, pi/2]. Row k holds the angles of the k-th
/// subspace rotation; the lower triangle and diagonal are zero.
class AngleMatrix {
 public:
  AngleMatrix() = default;
  explicit AngleMatrix(Eigen::Index n);

  /// Validates shape, zero lower triangle, and angle domain. Entries within
  /// 1e-12 of zero below the diagonal are snapped to zero; angles may
  /// overshoot +-pi/2 by at most 1e-9 and are clamped back.
  static AngleMatrix from_matrix(Eigen::MatrixXd m);

  Eigen::Index dim() const { return m_.rows(); }
  Eigen::Index angle_count() const { return dim() * (dim() - 1) / 2; }

  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Sets angle (i, j), requiring 0 <= i < j < n and |radians| <= pi/2.
  void set(Eigen::Index i, Eigen::Index j, double radians);

  const Eigen::MatrixXd& matrix() const { return m_; }

  bool operator==(const AngleMatrix& other) const { return m_ == other.m_; }

 private:
  Eigen::MatrixXd m_;
};

/// An eigensystem after orientation: eigenvalues sorted by descending
/// magnitude, per-vector reflection signs, and the Givens-angle polar form
/// that regenerates the oriented basis.
struct OrientedEigensystem {
  Eigen::MatrixXd Vor;           ///< oriented basis, = Vsort * diag(signs)
  Eigen::VectorXd Eor;           ///< eigenvalues sorted by |lambda| desc, signs kept
  Eigen::VectorXd signs;         ///< +-1 reflection per sorted eigenvector
  AngleMatrix theta;             ///< polar form; generator(theta) == Vor
  Eigen::VectorXi sort_indices;  ///< Vsort.col(t) == V.col(sort_indices[t])

  Eigen::Index dim() const { return Vor.rows(); }
};

}  // namespace eigenorient

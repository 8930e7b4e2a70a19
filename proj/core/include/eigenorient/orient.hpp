#pragma once

#include <Eigen/Dense>

#include "eigenorient/types.hpp"

namespace eigenorient {

struct OrientOptions {
  /// Gate on max|V^T V - I| before orientation starts.
  double orthonormality_tol = kDefaultOrthonormalityTol;
  /// When set, V is snapped to the nearest orthonormal basis (sign-fixed QR)
  /// before validation. Off by default; useful for inputs that were rounded
  /// in transit.
  bool reorthonormalize = false;
};

struct SortedEigensystem {
  Eigen::MatrixXd Vsort;         ///< columns of V permuted by sort_indices
  Eigen::VectorXd Esort;         ///< eigenvalues, |Esort| nonincreasing
  Eigen::VectorXi sort_indices;  ///< Vsort.col(t) == V.col(sort_indices[t])
};

/// Sorts eigenvalues by descending magnitude (signed values are kept) and
/// permutes the eigenvector columns to match. The sort is stable, so tied
/// magnitudes keep their input order.
SortedEigensystem sort_eigensystem(const EigenSystem& sys);

/// Orients an eigensystem: sorts by |eigenvalue|, then walks the subspaces
/// in descending order, reflecting each eigenvector onto the nonnegative
/// side of its axis (sign(0) = +1) and rotating it onto that axis with a
/// Givens cascade. The returned basis satisfies, up to roundoff,
///
///   generator(theta)^T * Vsort * diag(signs) == I
///
/// and Vor == Vsort * diag(signs) == generator(theta).
OrientedEigensystem orient_eigenvectors(const EigenSystem& sys,
                                        const OrientOptions& options = {});

/// Solves the Givens angles that rotate working column `column` onto axis k
/// (1-based). The column is the k-th column of the current working matrix;
/// its pivot entry column[k-1] must be nonnegative (the reflection step has
/// already run). Returns the n-k angles (theta_{k,k+1}, ..., theta_{k,n}),
/// each in [-pi/2, pi/2], solved bottom-up:
///
///   theta_n   = asin(a_n)
///   theta_j   = asin(a_j / (cos theta_n * ... * cos theta_{j+1}))
///
/// Arcsine arguments are clamped to [-1, 1] (tolerance kArcsineClampTol,
/// beyond which NonOrthonormalInput is thrown); once the running cosine
/// product falls below kCosineProductFloor the remaining angles are zero.
Eigen::VectorXd solve_subspace_angles(const Eigen::VectorXd& column,
                                      Eigen::Index k);

/// Planar rotation by `angle` embedded in R^n on axes (i, j), 0 <= i < j < n:
/// entries (i,i) = (j,j) = cos, (i,j) = -sin, (j,i) = +sin, identity
/// elsewhere. Determinant +1.
Eigen::MatrixXd givens_rotation(Eigen::Index n, Eigen::Index i,
                                Eigen::Index j, double angle);

/// Rotation R_k for subspace k (1-based): the cascade
/// R_{k,k+1} * R_{k,k+2} * ... * R_{k,n} built from row k of `theta`.
/// The leading (k-1) x (k-1) block is the identity.
Eigen::MatrixXd build_subspace_rotation(const AngleMatrix& theta,
                                        Eigen::Index k);

/// Generator: reconstructs the full oriented basis R_1 * R_2 * ... * R_n
/// from its angle matrix. Round trip:
/// generate_oriented_eigenvectors(orient_eigenvectors(sys).theta) == Vor.
Eigen::MatrixXd generate_oriented_eigenvectors(const AngleMatrix& theta);

/// Two-argument form: returns the single subspace rotation R_upto
/// (upto is 1-based), identical to build_subspace_rotation(theta, upto).
Eigen::MatrixXd generate_oriented_eigenvectors(const AngleMatrix& theta,
                                               Eigen::Index upto);

}  // namespace eigenorient

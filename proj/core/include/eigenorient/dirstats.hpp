#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "eigenorient/types.hpp"

namespace eigenorient {

/// Ordered sequence of oriented eigensystems from an evolving dataset.
struct BasisEnsemble {
  std::vector<OrientedEigensystem> members;  ///< nonempty, uniform dimension
  std::vector<std::string> timestamps;       ///< empty, or one label per member

  Eigen::Index dim() const;
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(members.size());
  }
  void validate() const;
};

struct MeanDirection {
  Eigen::VectorXd direction;  ///< unit vector x_S / ||x_S||
  double resultant_norm;      ///< ||x_S||, the length of the vector sum
};

/// Mean direction of a sample of unit vectors: the normalized vector sum.
/// Throws UndefinedMeanDirection when the sum is numerically zero.
MeanDirection mean_direction(const std::vector<Eigen::VectorXd>& vectors);

struct MeanBasisOptions {
  /// Max-norm gate on how far the column-normalized mean may sit from its
  /// nearest orthogonal matrix before the polar form is refused.
  double correction_tol = 0.1;
};

struct MeanBasisReport {
  Eigen::MatrixXd V_bar;            ///< column-normalized sum of member bases
  AngleMatrix theta_bar;            ///< polar form of the nearest rotation
  Eigen::VectorXd lambda_bar;       ///< arithmetic mean of sorted eigenvalues
  Eigen::VectorXd resultant_norms;  ///< per-column norm of the basis sum
};

/// Mean eigenbasis of an ensemble: per-column mean directions of the
/// oriented bases, the averaged eigenvalues, and the angle matrix extracted
/// by orienting the polar (nearest-orthogonal) factor of the mean. theta_bar
/// is derived from the mean basis, not by averaging member angles.
MeanBasisReport mean_eigenbasis(const BasisEnsemble& ensemble,
                                const MeanBasisOptions& options = {});

/// Per-member dispersion-bearing vector of subspace k (1-based): column k of
/// the member's subspace rotation, with the k-1 leading zero rows dropped.
/// Each result lives in R^{n-k+1} and has unit norm.
std::vector<Eigen::VectorXd> subspace_vectors(const BasisEnsemble& ensemble,
                                              Eigen::Index k);

struct DispersionOptions {
  bool refine_kappa = false;  ///< Newton-refine the closed-form estimate
  int max_refine_iterations = 25;
  double refine_tol = 1e-10;
  double kappa_cap = kKappaCap;
};

/// Per-subspace spread measures. A kappa at the cap flags a subspace whose
/// members are (numerically) identical.
struct DispersionReport {
  Eigen::VectorXd r_bar;              ///< mean resultant length, in [0, 1]
  Eigen::VectorXd circular_variance;  ///< 1 - r_bar
  Eigen::VectorXd kappa_basis;        ///< vMF concentration per subspace
  Eigen::VectorXi counts;             ///< samples per subspace
};

/// Dispersion of an ensemble (size >= 2), one estimate per descending
/// subspace: mean resultant length, circular variance, and the vMF
/// concentration implied by the resultant length.
DispersionReport dispersion(const BasisEnsemble& ensemble,
                            const DispersionOptions& options = {});

/// Raw sample covariance of the sorted eigenvalues across the ensemble.
Eigen::MatrixXd eigenvalue_covariance(const BasisEnsemble& ensemble);

}  // namespace eigenorient

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "eigenorient/dirstats.hpp"
#include "eigenorient/flow.hpp"
#include "eigenorient/types.hpp"

namespace eigenorient {

/// Seeded random orthonormal basis (QR of a Gaussian matrix, column signs
/// fixed so the result is deterministic across QR conventions).
Eigen::MatrixXd random_orthonormal(Eigen::Index n, std::uint64_t seed);

/// Copy of V with the masked columns negated.
Eigen::MatrixXd flip_columns(const Eigen::MatrixXd& V,
                             const std::vector<bool>& mask);

/// Ground truth for an ellipsoid-shaped Gaussian point cloud: principal
/// axis lengths (strictly descending, so the spectrum has no ties), the
/// rotation carrying the axes away from the coordinate axes, and additive
/// isotropic noise.
struct EllipsoidSpec {
  Eigen::Index n = 0;
  Eigen::VectorXd axis_lengths;  ///< strictly descending, positive
  AngleMatrix rotation_theta;    ///< ground-truth orientation
  Eigen::Index m = 0;            ///< observation count, > n
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Centered panel of m draws from N(0, G D^2 G^T + noise^2 I), where
/// G = generator(rotation_theta) and D = diag(axis_lengths).
Panel ellipsoid_cloud(const EllipsoidSpec& spec);

/// Ensemble of `count` oriented bases scattered around generator(theta_bar):
/// each member's subspace vectors are von Mises-Fisher draws of
/// concentration kappa about the mean basis's subspace vectors, re-solved
/// into Givens angles. kappa at or above the cap yields exact copies.
/// Draws landing in the negative-pivot halfspace (vanishing probability for
/// the concentrations of interest) are folded onto their pivot-positive
/// representative so every member stays inside the angle domain.
BasisEnsemble wobble_ensemble(const AngleMatrix& theta_bar, double kappa,
                              Eigen::Index count, std::uint64_t seed);

}  // namespace eigenorient

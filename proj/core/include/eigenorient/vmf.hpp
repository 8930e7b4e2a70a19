#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "eigenorient/types.hpp"

namespace eigenorient {

/// Bessel-function ratio A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa),
/// the mean resultant length of a von Mises-Fisher distribution in R^d.
/// Evaluated by continued fraction, stable for large kappa.
double vmf_bessel_ratio(int d, double kappa);

/// Closed-form concentration estimate kappa ~= r(d - r^2) / (1 - r^2),
/// capped at `cap`.
double vmf_kappa_approx(double r_bar, int d, double cap = kKappaCap);

/// Newton refinement of vmf_kappa_approx, solving A_d(kappa) = r_bar.
double vmf_kappa_mle(double r_bar, int d, int max_iterations = 25,
                     double tol = 1e-10, double cap = kKappaCap);

/// Draws `count` unit vectors from the von Mises-Fisher distribution
/// p(x) = c_d(kappa) exp(kappa mu^T x) on the sphere S^{d-1}, d >= 2.
/// kappa = 0 is the uniform distribution. Deterministic per seed.
std::vector<Eigen::VectorXd> vmf_sample(const Eigen::VectorXd& mu,
                                        double kappa, int count,
                                        std::uint64_t seed);

/// Same, drawing from a caller-owned generator.
std::vector<Eigen::VectorXd> vmf_sample(const Eigen::VectorXd& mu,
                                        double kappa, int count,
                                        std::mt19937_64& rng);

/// Uniform draw from the unit sphere S^{d-1}.
Eigen::VectorXd uniform_sphere_sample(int d, std::mt19937_64& rng);

}  // namespace eigenorient

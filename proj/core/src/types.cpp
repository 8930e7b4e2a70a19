#include "eigenorient/types.hpp"

#include <cmath>
#include <numbers>

namespace eigenorient {

double EigenSystem::orthonormality_residual() const {
  const Eigen::Index n = V.cols();
  return (V.transpose() * V - Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

void EigenSystem::validate(double orthonormality_tol) const {
  if (V.rows() < 1 || V.rows() != V.cols()) {
    throw DimensionMismatch("eigenvector matrix must be square with n >= 1");
  }
  if (lambdas.size() != V.rows()) {
    throw DimensionMismatch("eigenvalue count does not match basis dimension");
  }
  if (!V.allFinite() || !lambdas.allFinite()) {
    throw Error("eigensystem contains non-finite entries");
  }
  const double residual = orthonormality_residual();
  if (residual > orthonormality_tol) {
    throw NonOrthonormalInput(
        "eigenvector matrix is not orthonormal: max|V^T V - I| = " +
            std::to_string(residual),
        residual);
  }
}

AngleMatrix::AngleMatrix(Eigen::Index n) {
  if (n < 1) {
    throw DimensionMismatch("angle matrix dimension must be >= 1");
  }
  m_ = Eigen::MatrixXd::Zero(n, n);
}

AngleMatrix AngleMatrix::from_matrix(Eigen::MatrixXd m) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionMismatch("angle matrix must be square with n >= 1");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (std::abs(m(i, j)) > 1e-12) {
        throw Error("angle matrix must be strictly upper triangular");
      }
      m(i, j) = 0.0;
    }
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j)) || std::abs(m(i, j)) > half_pi + 1e-9) {
        throw Error("angle out of [-pi/2, pi/2] at (" + std::to_string(i) +
                    ", " + std::to_string(j) + ")");
      }
      m(i, j) = std::clamp(m(i, j), -half_pi, half_pi);
    }
  }
  AngleMatrix out;
  out.m_ = std::move(m);
  return out;
}

void AngleMatrix::set(Eigen::Index i, Eigen::Index j, double radians) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (i < 0 || j <= i || j >= dim()) {
    throw AxisOutOfRange("angle index (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") outside the upper triangle");
  }
  if (!std::isfinite(radians) || std::abs(radians) > half_pi + 1e-9) {
    throw Error("angle out of [-pi/2, pi/2]");
  }
  m_(i, j) = std::clamp(radians, -half_pi, half_pi);
}

}  // namespace eigenorient

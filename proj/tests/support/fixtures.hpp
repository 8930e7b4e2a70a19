#pragma once

// Golden fixtures shared by the unit and acceptance suites: a 3x3 and a 4x4
// reference orientation with known signs, angles, and reconstruction stages.
// The 3x3 basis is the QR basis of {(1,1,1)/sqrt(3), e2, e3} with the first
// column negated (a left-handed input); its exact columns have closed forms.

#include <Eigen/Dense>
#include <cmath>

#include "eigenorient/types.hpp"

namespace fixtures {

// --- 3x3 reference -------------------------------------------------------

inline Eigen::MatrixXd r3_input_basis() {
  const double a = 1.0 / std::sqrt(3.0);
  const double b = 1.0 / std::sqrt(6.0);
  const double c = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd v(3, 3);
  v << -a, -b, -c,
       -a, 2 * b, 0.0,
       -a, -b, c;
  return v;
}

inline Eigen::VectorXd r3_eigenvalues() { return Eigen::Vector3d(2.0, 1.0, 0.0); }

// The same basis rounded to three decimals, as it would arrive from a
// low-precision file.
inline Eigen::MatrixXd r3_input_basis_rounded() {
  Eigen::MatrixXd v(3, 3);
  v << -0.577, -0.408, -0.707,
       -0.577, 0.816, 0.0,
       -0.577, -0.408, 0.707;
  return v;
}

inline Eigen::VectorXd r3_expected_signs() { return Eigen::Vector3d(-1.0, 1.0, 1.0); }

inline Eigen::MatrixXd r3_expected_oriented() {
  Eigen::MatrixXd v(3, 3);
  v << 0.577, -0.408, -0.707,
       0.577, 0.816, 0.0,
       0.577, -0.408, 0.707;
  return v;
}

inline Eigen::MatrixXd r3_expected_theta_deg() {
  Eigen::MatrixXd t(3, 3);
  t << 0.0, 45.0, 35.264,
       0.0, 0.0, -30.0,
       0.0, 0.0, 0.0;
  return t;
}

// --- 4x4 reference -------------------------------------------------------

// QR basis of {(1,1,1,1)/2, e2, e3, e4}; column signs are irrelevant to the
// oriented outputs (flip invariance), so any QR convention may build it.
inline Eigen::MatrixXd r4_input_basis() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a.col(0).setConstant(0.5);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(4, 4);
}

inline Eigen::VectorXd r4_eigenvalues() { return Eigen::Vector4d(3.0, 2.0, 1.0, 0.0); }

inline Eigen::MatrixXd r4_expected_theta_deg() {
  Eigen::MatrixXd t(4, 4);
  t << 0.0, 45.0, 35.0, 30.0,
       0.0, 0.0, -30.0, -19.0,
       0.0, 0.0, 0.0, -30.0,
       0.0, 0.0, 0.0, 0.0;
  return t;
}

inline Eigen::MatrixXd r4_expected_oriented() {
  Eigen::MatrixXd v(4, 4);
  v << 0.5, -0.289, -0.408, -0.707,
       0.5, 0.866, 0.0, 0.0,
       0.5, -0.289, 0.816, 0.0,
       0.5, -0.289, -0.408, 0.707;
  return v;
}

inline Eigen::MatrixXd r4_expected_r1() {
  Eigen::MatrixXd v(4, 4);
  v << 0.5, -0.707, -0.408, -0.289,
       0.5, 0.707, -0.408, -0.289,
       0.5, 0.0, 0.816, -0.289,
       0.5, 0.0, 0.0, 0.866;
  return v;
}

inline Eigen::MatrixXd r4_expected_r1r2() {
  Eigen::MatrixXd v(4, 4);
  v << 0.5, -0.289, -0.707, -0.408,
       0.5, 0.866, 0.0, 0.0,
       0.5, -0.289, 0.707, -0.408,
       0.5, -0.289, 0.0, 0.816;
  return v;
}

// R1 R2 R3 and the full product coincide: the last subspace rotation is the
// identity.
inline Eigen::MatrixXd r4_expected_r1r2r3() { return r4_expected_oriented(); }

}  // namespace fixtures

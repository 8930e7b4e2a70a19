#include "eigenorient/orient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace eigenorient {
namespace {

// sign with sign(0) = +1; (x >= 0) is also true for -0.0.
double sign_nonneg(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// W <- G(i, j, angle)^T * W, touching only rows i and j.
void apply_givens_transposed_left(Eigen::MatrixXd& W, Eigen::Index i,
                                  Eigen::Index j, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Eigen::RowVectorXd wi = W.row(i);
  W.row(i) = c * wi + s * W.row(j);
  W.row(j) = -s * wi + c * W.row(j);
}

// M <- M * G(i, j, angle), touching only columns i and j.
void apply_givens_right(Eigen::MatrixXd& M, Eigen::Index i, Eigen::Index j,
                        double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Eigen::VectorXd mi = M.col(i);
  M.col(i) = c * mi + s * M.col(j);
  M.col(j) = -s * mi + c * M.col(j);
}

// Bottom-up arcsine recursion for the angles of subspace pivot index k0
// (0-based). Returns n - k0 - 1 angles ordered (theta_{k0,k0+1}, ...).
Eigen::VectorXd solve_angles_below_pivot(const Eigen::VectorXd& column,
                                         Eigen::Index k0) {
  const Eigen::Index n = column.size();
  Eigen::VectorXd angles = Eigen::VectorXd::Zero(n - k0 - 1);
  double r = 1.0;  // running product of cosines of the angles solved so far
  for (Eigen::Index j = n - 1; j > k0; --j) {
    double angle = 0.0;
    if (std::abs(r) >= kCosineProductFloor) {
      const double q = column(j) / r;
      if (std::abs(q) > 1.0 + kArcsineClampTol) {
        throw NonOrthonormalInput(
            "arcsine argument " + std::to_string(q) +
                " exceeds unity beyond the clamping tolerance; input basis "
                "is not orthonormal",
            std::abs(q) - 1.0);
      }
      angle = std::asin(std::clamp(q, -1.0, 1.0));
    }
    angles(j - k0 - 1) = angle;
    r *= std::cos(angle);
  }
  return angles;
}

// Nearest orthonormal basis that keeps the column signs of V: QR with the
// Q columns flipped to make the R diagonal nonnegative.
Eigen::MatrixXd reorthonormalized(const Eigen::MatrixXd& V) {
  const Eigen::Index n = V.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R =
      qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (R(k, k) < 0.0) Q.col(k) = -Q.col(k);
  }
  return Q;
}

}  // namespace

SortedEigensystem sort_eigensystem(const EigenSystem& sys) {
  if (sys.V.rows() != sys.V.cols() || sys.lambdas.size() != sys.V.rows()) {
    throw DimensionMismatch("eigensystem shapes are inconsistent");
  }
  const Eigen::Index n = sys.dim();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return std::abs(sys.lambdas(a)) > std::abs(sys.lambdas(b));
                   });

  SortedEigensystem out;
  out.Vsort.resize(n, n);
  out.Esort.resize(n);
  out.sort_indices.resize(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    out.sort_indices(t) = static_cast<int>(order[static_cast<std::size_t>(t)]);
    out.Vsort.col(t) = sys.V.col(out.sort_indices(t));
    out.Esort(t) = sys.lambdas(out.sort_indices(t));
  }
  return out;
}

OrientedEigensystem orient_eigenvectors(const EigenSystem& sys,
                                        const OrientOptions& options) {
  EigenSystem input = sys;
  if (options.reorthonormalize && sys.V.rows() == sys.V.cols() &&
      sys.V.rows() >= 1) {
    input.V = reorthonormalized(sys.V);
  }
  input.validate(options.orthonormality_tol);

  const Eigen::Index n = input.dim();
  SortedEigensystem sorted = sort_eigensystem(input);

  Eigen::MatrixXd W = sorted.Vsort;
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(n);
  AngleMatrix theta(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = sign_nonneg(W(i, i));
    signs(i) = s;
    if (s < 0.0) W.col(i) = -W.col(i);
    if (i + 1 == n) break;

    const Eigen::VectorXd angles = solve_angles_below_pivot(W.col(i), i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      theta.set(i, j, angles(j - i - 1));
    }
    // W <- R_i^T W; rightmost factor of R_i^T acts first.
    for (Eigen::Index j = i + 1; j < n; ++j) {
      apply_givens_transposed_left(W, i, j, theta(i, j));
    }
  }

  OrientedEigensystem out;
  out.Vor = sorted.Vsort * signs.asDiagonal();
  out.Eor = std::move(sorted.Esort);
  out.signs = std::move(signs);
  out.theta = std::move(theta);
  out.sort_indices = std::move(sorted.sort_indices);
  return out;
}

Eigen::VectorXd solve_subspace_angles(const Eigen::VectorXd& column,
                                      Eigen::Index k) {
  const Eigen::Index n = column.size();
  if (k < 1 || k > n) {
    throw AxisOutOfRange("subspace index " + std::to_string(k) +
                         " outside [1, " + std::to_string(n) + "]");
  }
  if (column(k - 1) < -kPivotTol) {
    throw PivotNegative("pivot entry " + std::to_string(column(k - 1)) +
                        " is negative; reflect the column first");
  }
  return solve_angles_below_pivot(column, k - 1);
}

Eigen::MatrixXd givens_rotation(Eigen::Index n, Eigen::Index i,
                                Eigen::Index j, double angle) {
  if (i < 0 || j <= i || j >= n) {
    throw AxisOutOfRange("givens axes (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") invalid for dimension " +
                         std::to_string(n));
  }
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  R(i, i) = c;
  R(j, j) = c;
  R(i, j) = -s;
  R(j, i) = s;
  return R;
}

Eigen::MatrixXd build_subspace_rotation(const AngleMatrix& theta,
                                        Eigen::Index k) {
  const Eigen::Index n = theta.dim();
  if (k < 1 || k > n) {
    throw AxisOutOfRange("subspace index " + std::to_string(k) +
                         " outside [1, " + std::to_string(n) + "]");
  }
  const Eigen::Index i = k - 1;
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index j = i + 1; j < n; ++j) {
    apply_givens_right(R, i, j, theta(i, j));
  }
  return R;
}

Eigen::MatrixXd generate_oriented_eigenvectors(const AngleMatrix& theta) {
  const Eigen::Index n = theta.dim();
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      apply_givens_right(R, i, j, theta(i, j));
    }
  }
  return R;
}

Eigen::MatrixXd generate_oriented_eigenvectors(const AngleMatrix& theta,
                                               Eigen::Index upto) {
  return build_subspace_rotation(theta, upto);
}

}  // namespace eigenorient

#include "eigenorient/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "eigenorient/orient.hpp"
#include "eigenorient/vmf.hpp"

namespace eigenorient {
namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = normal(rng);
  }
  return M;
}

}  // namespace

Eigen::MatrixXd random_orthonormal(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DimensionMismatch("dimension must be >= 1");
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd A = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R =
      qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (R(k, k) < 0.0) Q.col(k) = -Q.col(k);
  }
  return Q;
}

Eigen::MatrixXd flip_columns(const Eigen::MatrixXd& V,
                             const std::vector<bool>& mask) {
  if (static_cast<Eigen::Index>(mask.size()) != V.cols()) {
    throw DimensionMismatch("flip mask length does not match column count");
  }
  Eigen::MatrixXd out = V;
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    if (mask[static_cast<std::size_t>(j)]) out.col(j) = -out.col(j);
  }
  return out;
}

Panel ellipsoid_cloud(const EllipsoidSpec& spec) {
  const Eigen::Index n = spec.n;
  if (n < 1 || spec.axis_lengths.size() != n || spec.rotation_theta.dim() != n) {
    throw DimensionMismatch("ellipsoid spec shapes are inconsistent");
  }
  if (spec.m <= n) {
    throw DimensionMismatch("ellipsoid needs more observations than features");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(spec.axis_lengths(k) > 0.0) ||
        (k > 0 && spec.axis_lengths(k) >= spec.axis_lengths(k - 1))) {
      throw Error("axis lengths must be positive and strictly descending");
    }
  }
  if (spec.noise_sigma < 0.0) throw Error("noise sigma must be nonnegative");

  std::mt19937_64 rng(spec.seed);
  const Eigen::MatrixXd G = generate_oriented_eigenvectors(spec.rotation_theta);
  Eigen::MatrixXd data = gaussian_matrix(spec.m, n, rng) *
                         spec.axis_lengths.asDiagonal() * G.transpose();
  if (spec.noise_sigma > 0.0) {
    data += spec.noise_sigma * gaussian_matrix(spec.m, n, rng);
  }

  Panel panel;
  panel.data = std::move(data);
  panel.column_names.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    panel.column_names.push_back("x" + std::to_string(j + 1));
  }
  return centered_panel(std::move(panel));
}

BasisEnsemble wobble_ensemble(const AngleMatrix& theta_bar, double kappa,
                              Eigen::Index count, std::uint64_t seed) {
  if (count < 1) throw Error("ensemble size must be >= 1");
  if (kappa < 0.0) throw Error("concentration must be nonnegative");
  const Eigen::Index n = theta_bar.dim();
  const Eigen::VectorXd placeholder_eigenvalues =
      Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0);

  // Mean subspace vectors of theta_bar, one per subspace that has angles.
  std::vector<Eigen::VectorXd> mean_vectors;
  mean_vectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k < n; ++k) {
    const Eigen::MatrixXd rk = build_subspace_rotation(theta_bar, k);
    mean_vectors.push_back(rk.col(k - 1).tail(n - k + 1));
  }

  std::mt19937_64 rng(seed);
  BasisEnsemble ensemble;
  ensemble.members.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    AngleMatrix theta(n);
    if (kappa >= kKappaCap) {
      theta = theta_bar;  // concentration sentinel: exact copies
    } else {
      for (Eigen::Index k = 1; k < n; ++k) {
        const Eigen::VectorXd u = vmf_sample(
            mean_vectors[static_cast<std::size_t>(k - 1)], kappa, 1, rng)[0];
        // Pivot-positive fold, then re-solve the row's angles.
        Eigen::VectorXd column = Eigen::VectorXd::Zero(n);
        column.tail(n - k + 1) = u;
        column(k - 1) = std::abs(u(0));
        const Eigen::VectorXd angles = solve_subspace_angles(column, k);
        for (Eigen::Index j = k; j < n; ++j) theta.set(k - 1, j, angles(j - k));
      }
    }

    OrientedEigensystem member;
    member.Vor = generate_oriented_eigenvectors(theta);
    member.Eor = placeholder_eigenvalues;
    member.signs = Eigen::VectorXd::Ones(n);
    member.theta = std::move(theta);
    member.sort_indices =
        Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1);
    ensemble.members.push_back(std::move(member));
  }
  return ensemble;
}

}  // namespace eigenorient

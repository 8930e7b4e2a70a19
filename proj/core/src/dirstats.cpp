#include "eigenorient/dirstats.hpp"

#include <cmath>
#include <string>

#include "eigenorient/orient.hpp"
#include "eigenorient/vmf.hpp"

namespace eigenorient {

Eigen::Index BasisEnsemble::dim() const {
  return members.empty() ? 0 : members.front().dim();
}

void BasisEnsemble::validate() const {
  if (members.empty()) throw Error("ensemble is empty");
  const Eigen::Index n = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != n || m.theta.dim() != n) {
      throw DimensionMismatch("ensemble members have mixed dimensions");
    }
  }
  if (!timestamps.empty() &&
      static_cast<Eigen::Index>(timestamps.size()) != size()) {
    throw DimensionMismatch("timestamp count does not match member count");
  }
}

MeanDirection mean_direction(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) throw Error("mean direction of an empty sample");
  const Eigen::Index d = vectors.front().size();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (const auto& x : vectors) {
    if (x.size() != d) throw DimensionMismatch("mixed vector dimensions");
    if (std::abs(x.norm() - 1.0) > 1e-8) {
      throw Error("mean direction inputs must be unit vectors");
    }
    sum += x;
  }
  const double norm = sum.norm();
  if (norm < 1e-12) {
    throw UndefinedMeanDirection("resultant vector is numerically zero");
  }
  return {sum / norm, norm};
}

MeanBasisReport mean_eigenbasis(const BasisEnsemble& ensemble,
                                const MeanBasisOptions& options) {
  ensemble.validate();
  const Eigen::Index n = ensemble.dim();
  const double count = static_cast<double>(ensemble.size());

  Eigen::MatrixXd basis_sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd lambda_bar = Eigen::VectorXd::Zero(n);
  for (const auto& m : ensemble.members) {
    basis_sum += m.Vor;
    lambda_bar += m.Eor;
  }
  lambda_bar /= count;

  MeanBasisReport report;
  report.lambda_bar = lambda_bar;
  report.resultant_norms.resize(n);
  report.V_bar.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double norm = basis_sum.col(k).norm();
    if (norm < 1e-12) {
      throw UndefinedMeanDirection("mean direction of basis column " +
                                   std::to_string(k) + " is undefined");
    }
    report.resultant_norms(k) = norm;
    report.V_bar.col(k) = basis_sum.col(k) / norm;
  }

  // Polar factor: the orthogonal matrix nearest to V_bar in Frobenius norm.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      report.V_bar, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd nearest =
      svd.matrixU() * svd.matrixV().transpose();
  const double correction = (nearest - report.V_bar).cwiseAbs().maxCoeff();
  if (correction > options.correction_tol) {
    throw NonOrthogonalMean(
        "mean basis is too dispersed for a polar form; orthogonality "
        "correction " +
            std::to_string(correction),
        correction);
  }

  // Extract the polar form by orienting the corrected mean. Eigenvalues are
  // a descending placeholder so the sort step keeps column order.
  EigenSystem mean_sys{nearest, Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0)};
  report.theta_bar = orient_eigenvectors(mean_sys).theta;
  return report;
}

std::vector<Eigen::VectorXd> subspace_vectors(const BasisEnsemble& ensemble,
                                              Eigen::Index k) {
  ensemble.validate();
  const Eigen::Index n = ensemble.dim();
  if (k < 1 || k > n) {
    throw AxisOutOfRange("subspace index " + std::to_string(k) +
                         " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(ensemble.members.size());
  for (const auto& m : ensemble.members) {
    const Eigen::MatrixXd rk = build_subspace_rotation(m.theta, k);
    out.push_back(rk.col(k - 1).tail(n - k + 1));
  }
  return out;
}

DispersionReport dispersion(const BasisEnsemble& ensemble,
                            const DispersionOptions& options) {
  ensemble.validate();
  if (ensemble.size() < 2) {
    throw DegenerateEnsemble("dispersion needs at least two members");
  }
  const Eigen::Index n = ensemble.dim();
  const double count = static_cast<double>(ensemble.size());

  DispersionReport report;
  report.r_bar.resize(n);
  report.circular_variance.resize(n);
  report.kappa_basis.resize(n);
  report.counts = Eigen::VectorXi::Constant(n, static_cast<int>(count));

  for (Eigen::Index k = 1; k <= n; ++k) {
    const auto xs = subspace_vectors(ensemble, k);
    Eigen::VectorXd resultant = Eigen::VectorXd::Zero(n - k + 1);
    for (const auto& x : xs) resultant += x;
    const double norm = resultant.norm();
    if (norm < 1e-12) {
      throw DegenerateEnsemble("subspace " + std::to_string(k) +
                               " resultant vector is numerically zero");
    }
    const double r = std::min(norm / count, 1.0);
    const int d = static_cast<int>(n - k + 1);
    report.r_bar(k - 1) = r;
    report.circular_variance(k - 1) = 1.0 - r;
    report.kappa_basis(k - 1) =
        options.refine_kappa
            ? vmf_kappa_mle(r, d, options.max_refine_iterations,
                            options.refine_tol, options.kappa_cap)
            : vmf_kappa_approx(r, d, options.kappa_cap);
  }
  return report;
}

Eigen::MatrixXd eigenvalue_covariance(const BasisEnsemble& ensemble) {
  ensemble.validate();
  if (ensemble.size() < 2) {
    throw DegenerateEnsemble("covariance needs at least two members");
  }
  const Eigen::Index n = ensemble.dim();
  const Eigen::Index count = ensemble.size();
  Eigen::MatrixXd values(count, n);
  for (Eigen::Index i = 0; i < count; ++i) {
    values.row(i) = ensemble.members[static_cast<std::size_t>(i)].Eor;
  }
  const Eigen::RowVectorXd mean = values.colwise().mean();
  values.rowwise() -= mean;
  return values.transpose() * values / static_cast<double>(count - 1);
}

}  // namespace eigenorient

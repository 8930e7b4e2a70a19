#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenorient/orient.hpp"
#include "eigenorient/types.hpp"

namespace eigenorient {

/// A panel of observations: m rows of n features.
struct Panel {
  Eigen::MatrixXd data;                   ///< m x n
  std::vector<std::string> column_names;  ///< empty, or one per column
  bool centered = false;

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
};

/// Copy of `panel` with column means removed and the centered flag set.
Panel centered_panel(Panel panel);

struct DecomposeOptions {
  /// Center a non-centered panel before decomposing. When off, a
  /// non-centered panel is an error.
  bool auto_center = true;
};

/// SVD of a centered panel, P = U * diag(sqrt_lambdas) * V^T.
///
/// `sqrt_lambdas` are the singular values (so the product above reproduces
/// the panel exactly); `sys.lambdas` are the eigenvalues of the sample
/// covariance, sigma^2 / (m - 1). Regression designs that must reproduce
/// the panel use the singular-value scale; reported eigenvalues use the
/// covariance scale.
struct PanelDecomposition {
  Eigen::MatrixXd U;             ///< m x n, orthonormal columns
  Eigen::VectorXd sqrt_lambdas;  ///< singular values, descending
  EigenSystem sys;               ///< V and covariance-scale eigenvalues
  bool rank_deficient = false;   ///< any sigma < 1e-12 * sigma_max
};

PanelDecomposition decompose_panel(const Panel& panel,
                                   const DecomposeOptions& options = {});

/// A fitted principal-component regression.
struct RegressionModel {
  Eigen::VectorXd beta_hat;       ///< length q
  Eigen::Index q = 0;             ///< retained dimension
  Eigen::VectorXd signs_used;     ///< reflection signs applied to the design
  Eigen::VectorXd lambda_used;    ///< length q, variance scale of the design
  Eigen::MatrixXd rotation_used;  ///< n x n rotation (or mean basis)
  bool mean_basis = false;        ///< rotation_used is a mean basis, not
                                  ///< exactly orthogonal
  double residual_rms = 0.0;      ///< sqrt(mean squared residual)
};

/// Least squares on the oriented eigenbasis: regresses y on the first q
/// columns of U * diag(signs) * diag(sqrt(lambdas)). Solved by Householder
/// QR (never normal equations). rotation_used is left empty; the caller
/// attaches the rotation before predicting.
RegressionModel fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& U,
                    const Eigen::VectorXd& signs,
                    const Eigen::VectorXd& lambdas, Eigen::Index q);

/// Out-of-sample prediction E y = (P_out * rotation)[:, 0..q] * beta_hat.
/// The product is grouped (P_out * rotation) first: with q < n that is the
/// only grouping that exists.
Eigen::VectorXd predict(const Panel& panel_out, const RegressionModel& model);

/// fit() with an averaged eigenvalue vector; q = lambda_bar.size().
RegressionModel fit_averaged(const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& U,
                             const Eigen::VectorXd& signs,
                             const Eigen::VectorXd& lambda_bar);

/// predict() with a mean basis substituted for the rotation.
Eigen::VectorXd predict_averaged(const Panel& panel_out,
                                 const Eigen::MatrixXd& V_bar,
                                 const RegressionModel& model);

struct WindowConfig {
  Eigen::Index length = 0;  ///< 0 -> 8 * n rows
  Eigen::Index stride = 0;  ///< 0 -> length (non-overlapping)
};

/// Slices a long panel and response into rolling windows.
std::vector<std::pair<Panel, Eigen::VectorXd>> make_windows(
    const Panel& panel, const Eigen::VectorXd& y, WindowConfig config);

struct TrackOptions {
  Eigen::Index q = 0;   ///< retained dimension; 0 -> full
  bool orient = true;   ///< when off, the raw decomposition is used as-is
  bool center = true;
  double orthonormality_tol = kDefaultOrthonormalityTol;
  /// Flips random sign patterns into each window's decomposition output
  /// (U and V together, preserving the factorization). Simulates the
  /// platform-dependent sign instability the orientation step removes.
  std::optional<std::uint64_t> flip_seed;
};

struct TrackWindow {
  Eigen::Index index = 0;
  OrientedEigensystem oriented;
  RegressionModel model;
  std::string timestamp;
};

struct TrackRecord {
  std::vector<TrackWindow> windows;
};

/// decompose -> orient -> fit on one window.
TrackWindow fit_window(const Panel& panel, const Eigen::VectorXd& y,
                       const TrackOptions& options,
                       const std::vector<bool>& flip_mask = {});

/// Runs the per-window pipeline over an ordered stream of panels, recording
/// signs, angles, eigenvalues, and regression weights per window. Errors
/// from a member computation are rethrown as WindowError with the index.
TrackRecord rolling_track(const std::vector<Panel>& stream,
                          const std::vector<Eigen::VectorXd>& y_stream,
                          const TrackOptions& options = {});

}  // namespace eigenorient

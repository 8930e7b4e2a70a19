#include "eigenorient/flow.hpp"

#include <cmath>
#include <random>
#include <string>

namespace eigenorient {
namespace {

bool is_centered(const Eigen::MatrixXd& data) {
  return (data.colwise().mean()).cwiseAbs().maxCoeff() < 1e-10;
}

// U columns permuted the same way orientation permuted V's columns.
Eigen::MatrixXd permute_columns(const Eigen::MatrixXd& M,
                                const Eigen::VectorXi& indices) {
  Eigen::MatrixXd out(M.rows(), M.cols());
  for (Eigen::Index t = 0; t < indices.size(); ++t) {
    out.col(t) = M.col(indices(t));
  }
  return out;
}

}  // namespace

Panel centered_panel(Panel panel) {
  panel.data.rowwise() -= panel.data.colwise().mean();
  panel.centered = true;
  return panel;
}

PanelDecomposition decompose_panel(const Panel& panel,
                                   const DecomposeOptions& options) {
  const Eigen::Index m = panel.rows();
  const Eigen::Index n = panel.cols();
  if (m <= n || n < 1) {
    throw DimensionMismatch("panel needs more observations than features");
  }

  Panel work = panel;
  if (!panel.centered || !is_centered(panel.data)) {
    if (!options.auto_center) {
      throw Error("panel is not centered and auto-centering is disabled");
    }
    work = centered_panel(std::move(work));
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      work.data, Eigen::ComputeThinU | Eigen::ComputeThinV);

  PanelDecomposition out;
  out.U = svd.matrixU();
  out.sqrt_lambdas = svd.singularValues();
  out.sys.V = svd.matrixV();
  out.sys.lambdas =
      out.sqrt_lambdas.cwiseAbs2() / static_cast<double>(m - 1);
  const double sigma_max = out.sqrt_lambdas(0);
  out.rank_deficient =
      (out.sqrt_lambdas.array() < 1e-12 * sigma_max).any();
  return out;
}

RegressionModel fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& U,
                    const Eigen::VectorXd& signs,
                    const Eigen::VectorXd& lambdas, Eigen::Index q) {
  const Eigen::Index m = U.rows();
  const Eigen::Index n = U.cols();
  if (q < 1 || q > n) {
    throw DimensionMismatch("retained dimension q must lie in [1, n]");
  }
  if (y.size() != m || signs.size() < q || lambdas.size() < q) {
    throw DimensionMismatch("regression input sizes are inconsistent");
  }

  Eigen::VectorXd scale(q);
  for (Eigen::Index t = 0; t < q; ++t) {
    if (!(lambdas(t) > 0.0) || std::sqrt(lambdas(t)) < 1e-12) {
      throw SingularDesign("retained component " + std::to_string(t) +
                           " carries no variance");
    }
    scale(t) = signs(t) * std::sqrt(lambdas(t));
  }

  const Eigen::MatrixXd X = U.leftCols(q) * scale.asDiagonal();
  RegressionModel model;
  model.beta_hat = X.colPivHouseholderQr().solve(y);
  model.q = q;
  model.signs_used = signs;
  model.lambda_used = lambdas.head(q);
  model.residual_rms =
      std::sqrt((y - X * model.beta_hat).squaredNorm() / static_cast<double>(m));
  return model;
}

Eigen::VectorXd predict(const Panel& panel_out, const RegressionModel& model) {
  const Eigen::Index n = model.rotation_used.rows();
  if (n == 0) {
    throw Error("model carries no rotation; attach one before predicting");
  }
  if (model.rotation_used.cols() != n || panel_out.cols() != n) {
    throw DimensionMismatch("out-of-sample panel width does not match model");
  }
  if (!model.mean_basis) {
    const double residual =
        (model.rotation_used.transpose() * model.rotation_used -
         Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (residual > kDefaultOrthonormalityTol) {
      throw NonOrthonormalInput("model rotation is not orthogonal", residual);
    }
  }
  return (panel_out.data * model.rotation_used).leftCols(model.q) *
         model.beta_hat;
}

RegressionModel fit_averaged(const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& U,
                             const Eigen::VectorXd& signs,
                             const Eigen::VectorXd& lambda_bar) {
  RegressionModel model = fit(y, U, signs, lambda_bar, lambda_bar.size());
  model.mean_basis = true;
  return model;
}

Eigen::VectorXd predict_averaged(const Panel& panel_out,
                                 const Eigen::MatrixXd& V_bar,
                                 const RegressionModel& model) {
  RegressionModel with_mean = model;
  with_mean.rotation_used = V_bar;
  with_mean.mean_basis = true;
  return predict(panel_out, with_mean);
}

std::vector<std::pair<Panel, Eigen::VectorXd>> make_windows(
    const Panel& panel, const Eigen::VectorXd& y, WindowConfig config) {
  const Eigen::Index m = panel.rows();
  const Eigen::Index n = panel.cols();
  if (y.size() != m) {
    throw DimensionMismatch("response length does not match panel rows");
  }
  const Eigen::Index length = config.length > 0 ? config.length : 8 * n;
  const Eigen::Index stride = config.stride > 0 ? config.stride : length;
  if (length <= n) {
    throw DimensionMismatch("window length must exceed the feature count");
  }
  if (length > m) {
    throw DimensionMismatch("window length exceeds the available rows");
  }

  std::vector<std::pair<Panel, Eigen::VectorXd>> windows;
  for (Eigen::Index start = 0; start + length <= m; start += stride) {
    Panel slice;
    slice.data = panel.data.middleRows(start, length);
    slice.column_names = panel.column_names;
    slice.centered = false;
    windows.emplace_back(std::move(slice), y.segment(start, length));
  }
  return windows;
}

TrackWindow fit_window(const Panel& panel, const Eigen::VectorXd& y,
                       const TrackOptions& options,
                       const std::vector<bool>& flip_mask) {
  PanelDecomposition dec =
      decompose_panel(panel, DecomposeOptions{options.center});
  const Eigen::Index n = dec.sys.dim();
  for (Eigen::Index j = 0;
       j < static_cast<Eigen::Index>(flip_mask.size()) && j < n; ++j) {
    if (flip_mask[static_cast<std::size_t>(j)]) {
      dec.U.col(j) = -dec.U.col(j);
      dec.sys.V.col(j) = -dec.sys.V.col(j);
    }
  }

  const Eigen::Index m = panel.rows();
  const Eigen::Index q = options.q > 0 ? options.q : n;
  TrackWindow window;
  if (options.orient) {
    window.oriented = orient_eigenvectors(
        dec.sys, OrientOptions{options.orthonormality_tol, false});
    const Eigen::MatrixXd u_sorted =
        permute_columns(dec.U, window.oriented.sort_indices);
    // Regression design in singular-value scale: sqrt(lambda) = sigma.
    const Eigen::VectorXd lambda_fit =
        window.oriented.Eor * static_cast<double>(m - 1);
    window.model = fit(y, u_sorted, window.oriented.signs, lambda_fit, q);
    window.model.rotation_used = window.oriented.Vor;
  } else {
    // Baseline without orientation: the decomposition is used as returned.
    window.oriented.Vor = dec.sys.V;
    window.oriented.Eor = dec.sys.lambdas;
    window.oriented.signs = Eigen::VectorXd::Ones(n);
    window.oriented.theta = AngleMatrix(n);
    window.oriented.sort_indices =
        Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1);
    window.model = fit(y, dec.U, window.oriented.signs,
                       dec.sqrt_lambdas.cwiseAbs2(), q);
    window.model.rotation_used = dec.sys.V;
  }
  return window;
}

TrackRecord rolling_track(const std::vector<Panel>& stream,
                          const std::vector<Eigen::VectorXd>& y_stream,
                          const TrackOptions& options) {
  if (stream.empty()) throw Error("empty panel stream");
  if (stream.size() != y_stream.size()) {
    throw DimensionMismatch("panel stream and response stream differ in length");
  }
  const Eigen::Index n = stream.front().cols();
  for (const auto& p : stream) {
    if (p.cols() != n) {
      throw DimensionMismatch("panel stream has mixed feature counts");
    }
  }

  std::mt19937_64 flip_rng(options.flip_seed.value_or(0));
  std::bernoulli_distribution coin(0.5);

  TrackRecord record;
  record.windows.reserve(stream.size());
  for (std::size_t w = 0; w < stream.size(); ++w) {
    std::vector<bool> mask;
    if (options.flip_seed) {
      mask.resize(static_cast<std::size_t>(n));
      for (auto&& bit : mask) bit = coin(flip_rng);
    }
    try {
      TrackWindow window = fit_window(stream[w], y_stream[w], options, mask);
      window.index = static_cast<Eigen::Index>(w);
      record.windows.push_back(std::move(window));
    } catch (const Error& e) {
      throw WindowError(static_cast<long>(w), e.what());
    }
  }
  return record;
}

}  // namespace eigenorient

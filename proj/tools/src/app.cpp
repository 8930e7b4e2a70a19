#include "app.hpp"

#include <fstream>
#include <iostream>
#include <numbers>

#include "eigenorient/dirstats.hpp"
#include "eigenorient/flow.hpp"
#include "eigenorient/orient.hpp"
#include "eigenorient/synth.hpp"
#include "eigenorient/walkthrough.hpp"
#include "json_io.hpp"

namespace eigenorient::cli {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

Eigen::MatrixXd angles_out(const AngleMatrix& theta, const std::string& unit) {
  if (unit == "rad") return theta.matrix();
  return theta.matrix() * kDegPerRad;
}

AngleMatrix angles_in(const Eigen::MatrixXd& m, const std::string& unit) {
  if (unit == "rad") return AngleMatrix::from_matrix(m);
  return AngleMatrix::from_matrix(m / kDegPerRad);
}

void emit_json(const RunConfig& config, const json& j) {
  if (config.output_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(config.output_path, j);
  }
}

json signs_to_json(const Eigen::VectorXd& signs) {
  json out = json::array();
  for (Eigen::Index i = 0; i < signs.size(); ++i) {
    out.push_back(signs(i) >= 0.0 ? 1 : -1);
  }
  return out;
}

json oriented_to_json(const OrientedEigensystem& oriented,
                      const std::string& unit) {
  return json{{"n", oriented.dim()},
              {"signs", signs_to_json(oriented.signs)},
              {"theta", matrix_to_json(angles_out(oriented.theta, unit))},
              {"theta_unit", unit},
              {"sort_indices", vector_to_json(oriented.sort_indices)},
              {"Vor", matrix_to_json(oriented.Vor)}};
}

Panel load_panel(const RunConfig& config, const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  Panel panel;
  panel.data = std::move(table.values);
  panel.column_names = std::move(table.header);
  return panel;
}

std::vector<std::string> upper_triangle_labels(Eigen::Index n) {
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      labels.push_back("theta_" + std::to_string(i + 1) + "_" +
                       std::to_string(j + 1));
    }
  }
  return labels;
}

Eigen::RowVectorXd upper_triangle_row(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::RowVectorXd row(n * (n - 1) / 2);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) row(t++) = m(i, j);
  }
  return row;
}

int run_orient(const RunConfig& config) {
  EigenSystem sys;
  if (config.from_panel) {
    const Panel panel = load_panel(config, config.input_path);
    sys = decompose_panel(panel, DecomposeOptions{config.center}).sys;
  } else {
    if (config.eigenvalues_path.empty()) {
      throw Error("--eigenvalues is required unless --from-panel is given");
    }
    sys.V = read_matrix_csv(config.input_path);
    sys.lambdas = read_vector_csv(config.eigenvalues_path);
  }
  const OrientedEigensystem oriented = orient_eigenvectors(
      sys, OrientOptions{config.ortho_tol, config.reorthonormalize});
  emit_json(config, oriented_to_json(oriented, config.angle_unit));
  return 0;
}

int run_generate(const RunConfig& config) {
  const json input = read_json_file(config.input_path);
  if (!input.contains("theta")) {
    throw ParseError("input JSON has no \"theta\" key");
  }
  const std::string unit = input.value("theta_unit", config.angle_unit);
  const AngleMatrix theta = angles_in(matrix_from_json(input.at("theta")), unit);
  const Eigen::MatrixXd result =
      config.upto > 0 ? generate_oriented_eigenvectors(theta, config.upto)
                      : generate_oriented_eigenvectors(theta);
  emit_json(config, json{{"n", theta.dim()}, {"Vor", matrix_to_json(result)}});
  return 0;
}

json track_to_json(const TrackRecord& record, const std::string& unit) {
  json windows = json::array();
  for (const auto& w : record.windows) {
    windows.push_back(
        {{"k", w.index},
         {"signs", signs_to_json(w.oriented.signs)},
         {"theta", matrix_to_json(angles_out(w.oriented.theta, unit))},
         {"beta", vector_to_json(w.model.beta_hat)},
         {"eigenvalues", vector_to_json(w.oriented.Eor)}});
  }
  return json{{"theta_unit", unit}, {"windows", std::move(windows)}};
}

void write_track_series(const std::filesystem::path& dir,
                        const TrackRecord& record, const std::string& unit) {
  std::filesystem::create_directories(dir);
  const Eigen::Index count = static_cast<Eigen::Index>(record.windows.size());
  const Eigen::Index n = record.windows.front().oriented.dim();
  const Eigen::Index q = record.windows.front().model.q;

  Eigen::MatrixXd beta(count, q);
  Eigen::MatrixXd signs(count, n);
  Eigen::MatrixXd theta(count, n * (n - 1) / 2);
  for (Eigen::Index w = 0; w < count; ++w) {
    const auto& window = record.windows[static_cast<std::size_t>(w)];
    beta.row(w) = window.model.beta_hat.transpose();
    signs.row(w) = window.oriented.signs.transpose();
    theta.row(w) = upper_triangle_row(angles_out(window.oriented.theta, unit));
  }

  std::vector<std::string> beta_labels;
  for (Eigen::Index t = 0; t < q; ++t) {
    beta_labels.push_back("beta_" + std::to_string(t + 1));
  }
  std::vector<std::string> sign_labels;
  for (Eigen::Index t = 0; t < n; ++t) {
    sign_labels.push_back("sign_" + std::to_string(t + 1));
  }
  write_matrix_csv(dir / "beta.csv", beta, beta_labels);
  write_matrix_csv(dir / "signs.csv", signs, sign_labels);
  write_matrix_csv(dir / "theta.csv", theta, upper_triangle_labels(n));
}

int run_track(const RunConfig& config) {
  const Panel panel = load_panel(config, config.input_path);
  const Eigen::VectorXd y = read_vector_csv(config.y_path);
  const auto windows =
      make_windows(panel, y, WindowConfig{config.window_len, config.stride});

  TrackOptions options;
  options.q = config.q;
  options.orient = !config.no_orient;
  options.center = config.center;
  options.orthonormality_tol = config.ortho_tol;
  options.flip_seed = config.inject_flips;

  std::vector<Panel> panels;
  std::vector<Eigen::VectorXd> responses;
  for (auto& [slice, ys] : windows) {
    panels.push_back(slice);
    responses.push_back(ys);
  }
  const TrackRecord record = rolling_track(panels, responses, options);

  emit_json(config, track_to_json(record, config.angle_unit));
  if (!config.csv_dir.empty()) {
    write_track_series(config.csv_dir, record, config.angle_unit);
  }
  return 0;
}

BasisEnsemble ensemble_from_json(const json& input,
                                 const std::string& fallback_unit) {
  if (!input.contains("windows")) {
    throw ParseError("input JSON has no \"windows\" key");
  }
  const std::string unit = input.value("theta_unit", fallback_unit);
  BasisEnsemble ensemble;
  for (const auto& w : input.at("windows")) {
    OrientedEigensystem member;
    member.theta = angles_in(matrix_from_json(w.at("theta")), unit);
    const Eigen::Index n = member.theta.dim();
    member.Vor = generate_oriented_eigenvectors(member.theta);
    member.signs = Eigen::VectorXd::Ones(n);
    member.sort_indices =
        Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1);
    member.Eor = w.contains("eigenvalues")
                     ? vector_from_json(w.at("eigenvalues"))
                     : Eigen::VectorXd::Zero(n);
    ensemble.members.push_back(std::move(member));
  }
  return ensemble;
}

int run_dispersion(const RunConfig& config) {
  const json input = read_json_file(config.input_path);
  const BasisEnsemble ensemble = ensemble_from_json(input, config.angle_unit);

  DispersionOptions options;
  options.refine_kappa = config.refine_kappa;
  const DispersionReport report = dispersion(ensemble, options);
  const MeanBasisReport mean = mean_eigenbasis(ensemble);

  emit_json(config,
            json{{"r_bar", vector_to_json(report.r_bar)},
                 {"circular_variance", vector_to_json(report.circular_variance)},
                 {"kappa_basis", vector_to_json(report.kappa_basis)},
                 {"lambda_bar", vector_to_json(mean.lambda_bar)},
                 {"theta_bar",
                  matrix_to_json(angles_out(mean.theta_bar, config.angle_unit))},
                 {"theta_unit", config.angle_unit}});

  if (!config.csv_dir.empty()) {
    std::filesystem::create_directories(config.csv_dir);
    std::vector<std::string> labels;
    for (Eigen::Index k = 0; k < report.kappa_basis.size(); ++k) {
      labels.push_back("kappa_" + std::to_string(k + 1));
    }
    write_matrix_csv(config.csv_dir / "kappa.csv",
                     report.kappa_basis.transpose(), labels);
  }
  return 0;
}

int run_regress(const RunConfig& config) {
  const Panel panel = load_panel(config, config.input_path);
  const Eigen::VectorXd y = read_vector_csv(config.y_path);
  if (y.size() != panel.rows()) {
    throw DimensionMismatch("response length does not match panel rows");
  }

  TrackOptions options;
  options.q = config.q;
  options.center = config.center;
  options.orthonormality_tol = config.ortho_tol;
  const TrackWindow window = fit_window(panel, y, options);

  json out{{"n", window.oriented.dim()},
           {"q", window.model.q},
           {"beta", vector_to_json(window.model.beta_hat)},
           {"residual_rms", round_to_output_precision(window.model.residual_rms)},
           {"signs", signs_to_json(window.oriented.signs)},
           {"eigenvalues", vector_to_json(window.oriented.Eor)},
           {"theta", matrix_to_json(angles_out(window.oriented.theta,
                                               config.angle_unit))},
           {"theta_unit", config.angle_unit}};

  if (!config.predict_path.empty()) {
    const Panel out_panel = load_panel(config, config.predict_path);
    out["predictions"] = vector_to_json(predict(out_panel, window.model));
  }
  emit_json(config, out);
  return 0;
}

int run_synth(const RunConfig& config) {
  if (config.output_path.empty()) throw Error("synth requires --output");

  if (config.kind == "ellipsoid") {
    EllipsoidSpec spec;
    spec.axis_lengths = Eigen::Map<const Eigen::VectorXd>(
        config.axes.data(), static_cast<Eigen::Index>(config.axes.size()));
    spec.n = spec.axis_lengths.size();
    if (spec.n < 1) throw Error("--axes is required for kind=ellipsoid");
    spec.m = config.m;
    spec.noise_sigma = config.noise;
    spec.seed = config.seed;
    spec.rotation_theta =
        config.theta_path.empty()
            ? AngleMatrix(spec.n)
            : angles_in(read_matrix_csv(config.theta_path), config.angle_unit);

    const Panel panel = ellipsoid_cloud(spec);
    write_matrix_csv(config.output_path, panel.data, panel.column_names);
    if (!config.truth_path.empty()) {
      write_json_file(
          config.truth_path,
          json{{"axis_lengths", vector_to_json(spec.axis_lengths)},
               {"theta", matrix_to_json(
                             angles_out(spec.rotation_theta, config.angle_unit))},
               {"theta_unit", config.angle_unit},
               {"m", spec.m},
               {"noise_sigma", spec.noise_sigma},
               {"seed", spec.seed}});
    }
    return 0;
  }

  if (config.kind == "wobble") {
    if (config.n < 1 && config.theta_path.empty()) {
      throw Error("kind=wobble needs --n or --theta");
    }
    const AngleMatrix theta_bar =
        config.theta_path.empty()
            ? AngleMatrix(config.n)
            : angles_in(read_matrix_csv(config.theta_path), config.angle_unit);
    const BasisEnsemble ensemble =
        wobble_ensemble(theta_bar, config.kappa, config.count, config.seed);

    json windows = json::array();
    for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
      const auto& member = ensemble.members[i];
      windows.push_back(
          {{"k", i},
           {"signs", signs_to_json(member.signs)},
           {"theta", matrix_to_json(angles_out(member.theta, config.angle_unit))},
           {"beta", json::array()},
           {"eigenvalues", vector_to_json(member.Eor)}});
    }
    write_json_file(config.output_path, json{{"theta_unit", config.angle_unit},
                                             {"windows", std::move(windows)}});
    return 0;
  }

  throw Error("unknown synth kind \"" + config.kind +
              "\" (expected ellipsoid or wobble)");
}

int run_walkthrough(const RunConfig& config) {
  const Walkthrough trace = walkthrough_r3();
  if (config.output_path.empty()) {
    std::cout << trace.to_markdown();
  } else {
    std::ofstream out(config.output_path);
    if (!out) throw Error("cannot write " + config.output_path.string());
    out << trace.to_markdown();
  }
  return 0;
}

std::string error_type_name(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const NonOrthonormalInput*>(&e)) return "NonOrthonormalInput";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const AxisOutOfRange*>(&e)) return "AxisOutOfRange";
  if (dynamic_cast<const PivotNegative*>(&e)) return "PivotNegative";
  if (dynamic_cast<const UndefinedMeanDirection*>(&e)) {
    return "UndefinedMeanDirection";
  }
  if (dynamic_cast<const NonOrthogonalMean*>(&e)) return "NonOrthogonalMean";
  if (dynamic_cast<const DegenerateEnsemble*>(&e)) return "DegenerateEnsemble";
  if (dynamic_cast<const SingularDesign*>(&e)) return "SingularDesign";
  if (dynamic_cast<const InvalidDimension*>(&e)) return "InvalidDimension";
  if (dynamic_cast<const WindowError*>(&e)) return "WindowError";
  if (dynamic_cast<const Error*>(&e)) return "ValidationError";
  return "InternalError";
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.command == "orient") return run_orient(config);
    if (config.command == "generate") return run_generate(config);
    if (config.command == "track") return run_track(config);
    if (config.command == "dispersion") return run_dispersion(config);
    if (config.command == "regress") return run_regress(config);
    if (config.command == "synth") return run_synth(config);
    if (config.command == "walkthrough") return run_walkthrough(config);
    throw Error("unknown command \"" + config.command + "\"");
  } catch (const std::exception& e) {
    json error{{"type", error_type_name(e)}, {"message", e.what()}};
    if (const auto* w = dynamic_cast<const WindowError*>(&e)) {
      error["window"] = w->window_index();
    }
    std::cerr << json{{"error", std::move(error)}}.dump() << "\n";
    return 2;
  }
}

}  // namespace eigenorient::cli

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "app.hpp"

namespace {

using eigenorient::cli::RunConfig;

void add_angle_unit(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--angle-unit", config.angle_unit,
                  "Angle unit for file I/O (deg or rad)")
      ->check(CLI::IsMember({"deg", "rad"}))
      ->capture_default_str();
}

void add_center(CLI::App* cmd, RunConfig& config) {
  cmd->add_flag("--center,!--no-center", config.center,
                "Center panel columns before decomposing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Consistently oriented eigenbases: orientation, tracking, and "
      "directional statistics for evolving eigensystems"};
  app.require_subcommand(1);

  RunConfig config;

  auto* orient = app.add_subcommand(
      "orient", "Orient an eigenvector matrix (or a raw panel)");
  orient->add_option("--input", config.input_path,
                     "Eigenvector matrix CSV, or panel CSV with --from-panel")
      ->required();
  orient->add_option("--eigenvalues", config.eigenvalues_path,
                     "Eigenvalue vector CSV (one row or one column)");
  orient->add_flag("--from-panel", config.from_panel,
                   "Treat --input as a data panel and decompose it first");
  orient->add_option("--output", config.output_path, "Output JSON path");
  orient->add_option("--ortho-tol", config.ortho_tol,
                     "Orthonormality gate on max|V^T V - I|")
      ->capture_default_str();
  orient->add_flag("--reorthonormalize", config.reorthonormalize,
                   "Snap the input basis to the nearest orthonormal one");
  add_angle_unit(orient, config);
  add_center(orient, config);

  auto* generate = app.add_subcommand(
      "generate", "Rebuild the oriented basis from an orient output JSON");
  generate->add_option("--input", config.input_path, "orient output JSON")
      ->required();
  generate->add_option("--upto", config.upto,
                       "Emit the single subspace rotation R_k (1-based)");
  generate->add_option("--output", config.output_path, "Output JSON path");
  add_angle_unit(generate, config);

  auto* track = app.add_subcommand(
      "track", "Rolling decompose-orient-regress over a panel stream");
  track->add_option("--input", config.input_path, "Panel CSV")->required();
  track->add_option("--y", config.y_path, "Response CSV (one column)")
      ->required();
  track->add_option("--window-len", config.window_len,
                    "Rows per window (default 8n)");
  track->add_option("--stride", config.stride,
                    "Rows between window starts (default: window length)");
  track->add_option("--q", config.q, "Retained components (default: all)");
  track->add_flag("--no-orient", config.no_orient,
                  "Skip the orientation step (raw decomposition baseline)");
  track->add_option("--inject-flips", config.inject_flips,
                    "Seed for adversarial per-window sign flips (testing)");
  track->add_option("--csv-dir", config.csv_dir,
                    "Also write beta.csv / theta.csv / signs.csv here");
  track->add_option("--output", config.output_path, "Output JSON path");
  track->add_option("--ortho-tol", config.ortho_tol, "Orthonormality gate")
      ->capture_default_str();
  add_angle_unit(track, config);
  add_center(track, config);

  auto* dispersion = app.add_subcommand(
      "dispersion",
      "Mean basis and per-subspace dispersion of a tracked sequence");
  dispersion->add_option("--input", config.input_path,
                         "track (or synth wobble) output JSON")
      ->required();
  dispersion->add_flag("--refine-kappa", config.refine_kappa,
                       "Newton-refine the concentration estimates");
  dispersion->add_option("--csv-dir", config.csv_dir,
                         "Also write kappa.csv here");
  dispersion->add_option("--output", config.output_path, "Output JSON path");
  add_angle_unit(dispersion, config);

  auto* regress = app.add_subcommand(
      "regress", "Single-panel oriented principal-component regression");
  regress->add_option("--input", config.input_path, "Panel CSV")->required();
  regress->add_option("--y", config.y_path, "Response CSV (one column)")
      ->required();
  regress->add_option("--q", config.q, "Retained components (default: all)");
  regress->add_option("--predict", config.predict_path,
                      "Out-of-sample panel CSV to predict");
  regress->add_option("--output", config.output_path, "Output JSON path");
  regress->add_option("--ortho-tol", config.ortho_tol, "Orthonormality gate")
      ->capture_default_str();
  add_angle_unit(regress, config);
  add_center(regress, config);

  auto* synth = app.add_subcommand(
      "synth", "Generate synthetic panels and basis ensembles");
  synth->add_option("--kind", config.kind, "ellipsoid | wobble")->required();
  synth->add_option("--axes", config.axes,
                    "Ellipsoid axis lengths, strictly descending")
      ->delimiter(',');
  synth->add_option("--n", config.n, "Dimension (wobble)");
  synth->add_option("--m", config.m, "Observations (ellipsoid)");
  synth->add_option("--count", config.count, "Ensemble size (wobble)");
  synth->add_option("--noise", config.noise, "Isotropic noise sigma");
  synth->add_option("--kappa", config.kappa, "Concentration (wobble)");
  synth->add_option("--theta", config.theta_path,
                    "Ground-truth angle matrix CSV");
  synth->add_option("--seed", config.seed, "Random seed")
      ->capture_default_str();
  synth->add_option("--truth", config.truth_path,
                    "Write the ground truth JSON here (ellipsoid)");
  synth->add_option("--output", config.output_path,
                    "Panel CSV (ellipsoid) or ensemble JSON (wobble)")
      ->required();
  add_angle_unit(synth, config);

  auto* walkthrough = app.add_subcommand(
      "walkthrough",
      "Emit the staged 3x3 orientation walkthrough as markdown");
  walkthrough->add_option("--output", config.output_path,
                          "Markdown path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "{\"error\":{\"type\":\"UsageError\",\"message\":"
              << nlohmann::json(e.what()).dump() << "}}\n";
    return 2;
  }

  for (auto* cmd : {orient, generate, track, dispersion, regress, synth,
                    walkthrough}) {
    if (cmd->parsed()) {
      config.command = cmd->get_name();
      break;
    }
  }
  return eigenorient::cli::run(config);
}

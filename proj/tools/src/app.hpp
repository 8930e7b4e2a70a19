#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eigenorient/types.hpp"

namespace eigenorient::cli {

/// Parsed command line for one invocation.
struct RunConfig {
  std::string command;  ///< orient | generate | track | dispersion | regress
                        ///< | synth | walkthrough
  std::filesystem::path input_path;
  std::filesystem::path output_path;  ///< empty -> stdout
  std::filesystem::path eigenvalues_path;
  std::filesystem::path y_path;
  std::filesystem::path theta_path;
  std::filesystem::path truth_path;
  std::filesystem::path predict_path;
  std::filesystem::path csv_dir;

  long window_len = 0;  ///< 0 -> default (8n)
  long stride = 0;      ///< 0 -> window length
  long q = 0;           ///< 0 -> full dimension
  long upto = 0;        ///< generate: emit a single subspace rotation

  std::string angle_unit = "deg";  ///< deg | rad
  bool center = true;
  bool from_panel = false;
  bool no_orient = false;
  bool reorthonormalize = false;
  bool refine_kappa = false;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> inject_flips;
  double ortho_tol = kDefaultOrthonormalityTol;

  // synth
  std::string kind;  ///< ellipsoid | wobble
  long n = 0;
  long m = 0;
  long count = 0;
  double kappa = 0.0;
  double noise = 0.0;
  std::vector<double> axes;
};

/// Executes one command. Returns 0 on success with outputs written; on a
/// validation or parse failure, writes a machine-readable error object to
/// stderr and returns 2.
int run(const RunConfig& config);

}  // namespace eigenorient::cli

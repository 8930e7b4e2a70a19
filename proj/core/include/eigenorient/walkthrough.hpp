#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "eigenorient/types.hpp"

namespace eigenorient {

struct WalkthroughStage {
  std::string label;       ///< e.g. "R1^T V S1"
  Eigen::MatrixXd matrix;  ///< the working matrix after this step
};

/// A staged trace of the orientation of one 3x3 basis: every reflection and
/// rotation applied in order, ending at the identity.
struct Walkthrough {
  Eigen::MatrixXd basis;                 ///< the input basis V
  std::vector<WalkthroughStage> stages;  ///< V, V S1, R1^T V S1, ...
  Eigen::VectorXd signs;
  AngleMatrix theta;
  Eigen::MatrixXd oriented;  ///< V * diag(signs)

  /// Renders the trace as a markdown document.
  std::string to_markdown() const;
};

/// Traces the orientation of a 3x3 basis step by step with explicit matrix
/// products (no shortcuts), recording the working matrix after every
/// reflection and rotation.
Walkthrough walkthrough_r3(const Eigen::MatrixXd& V,
                           const Eigen::VectorXd& lambdas);

/// Default trace: a left-handed basis (det -1) built by flipping the middle
/// column of a rotation. Its orientation needs exactly one reflection, of
/// the second eigenvector, and the final subspace rotation is the identity.
Walkthrough walkthrough_r3();

}  // namespace eigenorient

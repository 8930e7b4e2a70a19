#include "eigenorient/walkthrough.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eigenorient/orient.hpp"

namespace eigenorient {
namespace {

std::string matrix_block(const Eigen::MatrixXd& M) {
  std::ostringstream out;
  out << "```\n";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "% 10.6f", M(i, j));
      out << buf << (j + 1 < M.cols() ? "  " : "");
    }
    out << "\n";
  }
  out << "```\n";
  return out.str();
}

}  // namespace

Walkthrough walkthrough_r3(const Eigen::MatrixXd& V,
                           const Eigen::VectorXd& lambdas) {
  if (V.rows() != 3 || V.cols() != 3 || lambdas.size() != 3) {
    throw DimensionMismatch("walkthrough expects a 3x3 eigensystem");
  }

  EigenSystem sys{V, lambdas};
  sys.validate();
  SortedEigensystem sorted = sort_eigensystem(sys);

  Walkthrough trace;
  trace.basis = sorted.Vsort;
  trace.signs = Eigen::VectorXd::Ones(3);
  trace.theta = AngleMatrix(3);
  trace.stages.push_back({"V", sorted.Vsort});

  Eigen::MatrixXd W = sorted.Vsort;
  std::string rotations_label;  // accumulates "R2^T R1^T" etc.
  std::string reflections_label;
  for (Eigen::Index i = 0; i < 3; ++i) {
    const double s = W(i, i) >= 0.0 ? 1.0 : -1.0;
    trace.signs(i) = s;
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(3, 3);
    S(i, i) = s;
    W = W * S;
    reflections_label += " S" + std::to_string(i + 1);
    trace.stages.push_back(
        {rotations_label + "V" + reflections_label, W});

    // Subspace rotation, formed explicitly as a product of Givens matrices.
    Eigen::MatrixXd Ri = Eigen::MatrixXd::Identity(3, 3);
    if (i + 1 < 3) {
      const Eigen::VectorXd angles = solve_subspace_angles(W.col(i), i + 1);
      for (Eigen::Index j = i + 1; j < 3; ++j) {
        trace.theta.set(i, j, angles(j - i - 1));
        Ri = Ri * givens_rotation(3, i, j, angles(j - i - 1));
      }
    }
    W = Ri.transpose() * W;
    rotations_label = "R" + std::to_string(i + 1) + "^T " + rotations_label;
    trace.stages.push_back(
        {rotations_label + "V" + reflections_label, W});
  }

  trace.oriented = sorted.Vsort * trace.signs.asDiagonal();
  return trace;
}

Walkthrough walkthrough_r3() {
  constexpr double deg = std::numbers::pi / 180.0;
  AngleMatrix theta(3);
  theta.set(0, 1, 35.0 * deg);
  theta.set(0, 2, 20.0 * deg);
  theta.set(1, 2, -25.0 * deg);

  // Flip the middle column of a rotation: det becomes -1, and orientation
  // must reflect exactly that eigenvector back.
  Eigen::MatrixXd V = generate_oriented_eigenvectors(theta);
  V.col(1) = -V.col(1);
  return walkthrough_r3(V, Eigen::Vector3d(3.0, 2.0, 1.0));
}

std::string Walkthrough::to_markdown() const {
  constexpr double rad_to_deg = 180.0 / std::numbers::pi;
  std::ostringstream out;
  out << "# Orientation walkthrough in R^3\n\n";
  out << "Each stage shows the working matrix after one reflection or one\n"
         "subspace rotation. The trace ends at the identity, which is the\n"
         "defining property of the orientation: the accumulated rotations,\n"
         "applied transposed, carry the reflected basis onto the coordinate\n"
         "axes.\n\n";
  for (const auto& stage : stages) {
    out << "## " << stage.label << "\n\n" << matrix_block(stage.matrix) << "\n";
  }
  out << "## Result\n\n";
  out << "signs = (";
  for (Eigen::Index i = 0; i < signs.size(); ++i) {
    out << (signs(i) > 0 ? "+1" : "-1") << (i + 1 < signs.size() ? ", " : "");
  }
  out << ")\n\ntheta (degrees) =\n\n"
      << matrix_block(theta.matrix() * rad_to_deg) << "\n";
  out << "oriented basis V * diag(signs) =\n\n" << matrix_block(oriented);
  return out.str();
}

}  // namespace eigenorient

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <json.hpp>

#include "csv.hpp"

namespace eigenorient::cli {

using json = nlohmann::json;

/// Row-major nested array, values rounded to the 12-significant-digit
/// output precision.
json matrix_to_json(const Eigen::MatrixXd& m);
json vector_to_json(const Eigen::VectorXd& v);
json vector_to_json(const Eigen::VectorXi& v);

Eigen::MatrixXd matrix_from_json(const json& j);
Eigen::VectorXd vector_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace eigenorient::cli

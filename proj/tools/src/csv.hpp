#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "eigenorient/errors.hpp"

namespace eigenorient::cli {

/// A malformed input file (CSV or JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Comma-separated numeric table. An optional single header row is
/// auto-detected: if any field of the first row fails to parse as a number,
/// the row is treated as column labels. No quoting.
struct CsvTable {
  std::vector<std::string> header;  ///< empty when the file has no header
  Eigen::MatrixXd values;
};

CsvTable read_csv(const std::filesystem::path& path);

/// read_csv, discarding the header.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// Reads a single-column (or single-row) CSV as a vector.
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

/// Writes values at 12 significant digits, with an optional header row.
void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& values,
                      const std::vector<std::string>& header = {});

/// %.12g rendering used for every numeric output.
std::string format_double(double value);

/// Nearest double whose %.12g rendering round-trips exactly; applied to
/// JSON payloads so files and in-memory values agree.
double round_to_output_precision(double value);

}  // namespace eigenorient::cli

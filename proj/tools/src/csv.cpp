#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace eigenorient::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::string_view raw(line.data() + start,
                               (comma == std::string::npos ? line.size() : comma) - start);
    fields.emplace_back(trim(raw));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view field) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);

    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const auto& f : fields) {
      if (auto v = parse_double(f)) {
        row.push_back(*v);
      } else {
        numeric = false;
        break;
      }
    }

    if (!numeric) {
      if (rows.empty() && header.empty()) {
        header = fields;  // auto-detected label row
        width = fields.size();
        continue;
      }
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": non-numeric field in data row");
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no data rows");

  CsvTable table;
  table.header = std::move(header);
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return table;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  return read_csv(path).values;
}

Eigen::VectorXd read_vector_csv(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ParseError(path.string() + ": expected a single row or column");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

double round_to_output_precision(double value) {
  return std::strtod(format_double(value).c_str(), nullptr);
}

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& values,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      out << header[j] << (j + 1 < header.size() ? "," : "\n");
    }
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      out << format_double(values(i, j)) << (j + 1 < values.cols() ? "," : "\n");
    }
  }
}

}  // namespace eigenorient::cli

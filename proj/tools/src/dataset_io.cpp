#include "dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fpcr::cli {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::vector<std::string> split_fields(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_field(const std::string& field, Eigen::Index row, std::size_t column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw CsvFormatError("row " + std::to_string(row) + ", column " + std::to_string(column + 1) +
                         ": '" + field + "' is not a number");
  }
  return value;
}

}  // namespace

Dataset read_dataset_csv(const std::filesystem::path& path, Eigen::Index min_rows) {
  std::ifstream in(path);
  if (!in) {
    throw CsvFormatError("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw CsvFormatError("'" + path.string() + "' is empty");
  }
  const std::vector<std::string> header = split_fields(line);
  if (header.empty() || header[0] != "y") {
    throw CsvFormatError("header must start with 'y', got '" +
                         (header.empty() ? "" : header[0]) + "'");
  }
  const auto m = static_cast<Eigen::Index>(header.size()) - 1;
  if (m < 2) {
    throw CsvFormatError("need at least 2 curve columns (x_1, x_2, ...); a single column is "
                         "not a curve");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    const std::string expected = "x_" + std::to_string(j + 1);
    if (header[j + 1] != expected) {
      throw CsvFormatError("header column " + std::to_string(j + 2) + ": expected '" + expected +
                           "', got '" + header[j + 1] + "'");
    }
  }

  std::vector<double> responses;
  std::vector<GridFunction> curves;
  Eigen::Index row = 1;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<Eigen::Index>(fields.size()) != m + 1) {
      throw CsvFormatError("row " + std::to_string(row) + ": expected " + std::to_string(m + 1) +
                           " fields, got " + std::to_string(fields.size()));
    }
    responses.push_back(parse_field(fields[0], row, 0));
    Eigen::VectorXd values(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      values[j] = parse_field(fields[j + 1], row, j + 1);
    }
    curves.emplace_back(std::move(values));
    ++row;
  }
  const auto n = static_cast<Eigen::Index>(responses.size());
  if (n < min_rows) {
    throw CsvFormatError("need at least " + std::to_string(min_rows) + " observations, got " +
                         std::to_string(n));
  }
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = responses[i];
  return Dataset(std::move(curves), std::move(y));
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  const Eigen::Index m = data.grid_size();
  out << "y";
  for (Eigen::Index j = 1; j <= m; ++j) out << ",x_" << j;
  out << "\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out << format_double(data.y[i]);
    for (Eigen::Index j = 0; j < m; ++j) {
      out << ',' << format_double(data.x[i].values()[j]);
    }
    out << "\n";
  }
}

}  // namespace fpcr::cli

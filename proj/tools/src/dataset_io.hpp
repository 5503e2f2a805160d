#pragma once

#include <filesystem>
#include <string>

#include "fpcr/regression.hpp"

namespace fpcr::cli {

/// Thrown on malformed CSV input; the message carries row/column
/// diagnostics.
class CsvFormatError : public Error {
 public:
  using Error::Error;
};

/// Lossless double formatting (17 significant digits) used for every
/// numeric value this tool writes.
std::string format_double(double value);

/// Dataset CSV: header `y,x_1,...,x_m`, one observation per row, LF line
/// endings. The reader rejects ragged rows, non-numeric fields, fewer than
/// 2 curve columns, and fewer than `min_rows` observations.
Dataset read_dataset_csv(const std::filesystem::path& path, Eigen::Index min_rows = 10);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace fpcr::cli

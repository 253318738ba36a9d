#pragma once

#include <string>

#include "imsel/dataset.hpp"

namespace imsel {

/// Reads an RFC-4180-style CSV file: first row is the header, every
/// cell numeric, no missing values. The column named `response` becomes
/// y; all remaining columns become X in file order. A missing or
/// non-numeric cell raises CsvError naming the row and column.
Dataset read_dataset_csv(const std::string& path, const std::string& response);

}  // namespace imsel

#include "imsel/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "imsel/errors.hpp"

namespace imsel {
namespace {

// Splits one CSV record. Handles quoted fields with doubled quotes and
// strips a trailing CR.
std::vector<std::string> split_record(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // trailing CR of a CRLF line
    } else {
      cur += c;
    }
  }
  if (quoted) throw CsvError("csv: unterminated quote in row " + std::to_string(row));
  fields.push_back(cur);
  return fields;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
  const auto fail = [&] {
    throw CsvError("csv: missing or non-numeric value at row " + std::to_string(row) +
                   ", column '" + col + "' (got \"" + cell + "\")");
  };
  std::string s = cell;
  // trim surrounding whitespace
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) fail();
  s = s.substr(b, s.find_last_not_of(" \t") - b + 1);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail();
  }
  if (pos != s.size()) fail();
  return v;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path, const std::string& response) {
  std::ifstream in(path);
  if (!in) throw CsvError("csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw CsvError("csv: empty file '" + path + "'");
  const std::vector<std::string> header = split_record(line, 1);

  const auto rit = std::find(header.begin(), header.end(), response);
  if (rit == header.end()) {
    throw CsvError("csv: response column '" + response + "' not found in header");
  }
  const std::size_t ry = static_cast<std::size_t>(rit - header.begin());

  std::vector<std::vector<double>> rows;
  std::size_t rownum = 1;
  while (std::getline(in, line)) {
    ++rownum;
    if (line.empty() && in.eof()) break;
    const auto fields = split_record(line, rownum);
    if (fields.size() != header.size()) {
      throw CsvError("csv: row " + std::to_string(rownum) + " has " +
                     std::to_string(fields.size()) + " fields, expected " +
                     std::to_string(header.size()));
    }
    std::vector<double> vals(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      vals[j] = parse_cell(fields[j], rownum, header[j]);
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw CsvError("csv: no data rows in '" + path + "'");

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(header.size()) - 1;

  Dataset data;
  data.y.resize(n);
  data.X.resize(n, p);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != ry) data.names.push_back(header[j]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index k = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j == ry) {
        data.y(i) = rows[static_cast<std::size_t>(i)][j];
      } else {
        data.X(i, k++) = rows[static_cast<std::size_t>(i)][j];
      }
    }
  }
  return data;
}

}  // namespace imsel

#include "pcaretain/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pcaretain/errors.hpp"

namespace pcaretain {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    // Trim surrounding whitespace.
    std::size_t first = cell.find_first_not_of(" \t\r");
    std::size_t last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

DatasetFile ingest_csv(const std::filesystem::path& path, Orientation orientation,
                       bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  std::vector<std::vector<std::string>> raw;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    raw.push_back(split_line(line));
  }
  if (raw.empty()) throw DataError("'" + path.string() + "': empty file");

  DatasetFile file;
  file.path = path;
  file.orientation = orientation;
  file.had_header = has_header;

  std::vector<std::string> labels;
  std::size_t first_data_row = 0;
  if (has_header) {
    labels = raw[0];
    first_data_row = 1;
  }
  if (first_data_row >= raw.size()) throw DataError("'" + path.string() + "': empty data");

  // A non-numeric leading column holds row labels.
  double probe;
  const bool row_labels = !raw[first_data_row].empty() &&
                          !parse_double(raw[first_data_row][0], probe);
  file.had_row_labels = row_labels;
  const std::size_t col_offset = row_labels ? 1 : 0;
  if (row_labels && !labels.empty()) labels.erase(labels.begin());
  std::vector<std::string> row_label_values;
  if (row_labels) {
    for (std::size_t r = first_data_row; r < raw.size(); ++r)
      if (!raw[r].empty()) row_label_values.push_back(raw[r][0]);
  }

  const std::size_t width = raw[first_data_row].size();
  if (width <= col_offset) throw DataError("'" + path.string() + "': empty data");
  const std::size_t cols = width - col_offset;
  const std::size_t rows = raw.size() - first_data_row;

  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::size_t r = first_data_row; r < raw.size(); ++r) {
    if (raw[r].size() != width) {
      throw DataError("'" + path.string() + "': ragged row " + std::to_string(r + 1) +
                      " (expected " + std::to_string(width) + " cells, got " +
                      std::to_string(raw[r].size()) + ")");
    }
    for (std::size_t c = col_offset; c < width; ++c) {
      double v;
      if (!parse_double(raw[r][c], v)) {
        throw DataError("'" + path.string() + "': non-numeric cell at row " +
                        std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                        " ('" + raw[r][c] + "')");
      }
      values.push_back(v);
    }
  }

  std::size_t n = rows, p = cols;
  if (orientation == Orientation::RowsAreVariables) {
    std::vector<double> transposed(values.size());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) transposed[j * rows + i] = values[i * cols + j];
    values = std::move(transposed);
    std::swap(n, p);
    // Rows were variables, so the row-label column names the variables.
    labels = std::move(row_label_values);
  }
  if (!labels.empty() && labels.size() != p) labels.clear();

  file.matrix = DataMatrix(n, p, std::move(values), std::move(labels));
  for (std::size_t j = 0; j < p; ++j) {
    bool constant = true;
    for (std::size_t i = 1; i < n && constant; ++i)
      constant = file.matrix(i, j) == file.matrix(0, j);
    if (constant) file.constant_columns.push_back(j);
  }
  return file;
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

std::string format_count(long long value) { return std::to_string(value); }

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);  // fixed '\n' on every platform
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  if (!table.header.empty()) write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_line(line);
      first = false;
    } else {
      table.rows.push_back(split_line(line));
    }
  }
  return table;
}

}  // namespace pcaretain

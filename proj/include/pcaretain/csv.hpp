#ifndef PCARETAIN_CSV_HPP
#define PCARETAIN_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "pcaretain/covariance.hpp"

namespace pcaretain {

enum class Orientation { RowsAreObservations, RowsAreVariables };

// Parsed dataset with provenance details reported back to the user.
struct DatasetFile {
  std::filesystem::path path;
  Orientation orientation = Orientation::RowsAreObservations;
  bool had_header = false;
  bool had_row_labels = false;
  std::vector<std::size_t> constant_columns;  // post-orientation indices
  DataMatrix matrix{1, 1, {0.0}};
};

// Comma-separated numeric table. An optional header row supplies column
// labels; a non-numeric first column is treated as row labels and dropped.
// Orientation::RowsAreVariables transposes after parsing.
DatasetFile ingest_csv(const std::filesystem::path& path, Orientation orientation,
                       bool has_header);

// Serialization used by every emitted table: 12 significant digits, fixed
// decimal point, no grouping, so files re-parse to the values that produced
// them.
std::string format_real(double value);
std::string format_count(long long value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Reads the CSV back as strings (no numeric coercion); used by round-trip
// checks and the anova command's column selection.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace pcaretain

#endif

// Rectangular numeric tables with a metadata block, written as CSV, JSON or
// a bare-bones SVG line plot.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace amconv::cli {

enum class Format { Csv, Json, Svg };

Format parse_format(const std::string& name);
const char* extension(Format f);

struct TableArtifact {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
  // SVG hints: x column (default first), y columns (default all others) and
  // a column whose changes start a new polyline.
  std::string plot_x;
  std::vector<std::string> plot_y;
  std::string plot_group;

  TableArtifact() = default;
  explicit TableArtifact(std::vector<std::string> cols) : columns(std::move(cols)) {}

  /// Throws std::invalid_argument if the width does not match the header.
  void add_row(std::vector<double> row);
  void set_meta(const std::string& key, const std::string& value);
  std::size_t column_index(const std::string& name) const;
};

/// 17 significant digits, '.' separator, locale independent.
std::string format_number(double x);

std::string to_csv(const TableArtifact& t);
std::string to_json(const TableArtifact& t);
/// Line plot following the table's plot hints. With a group column, rows are
/// bucketed by its value and each bucket becomes its own polyline.
std::string to_svg(const TableArtifact& t);

std::string render(const TableArtifact& t, Format f);

/// Writes to `path`, or stdout when path is empty or "-". Throws
/// std::runtime_error if the file cannot be written.
void write_table(const TableArtifact& t, const std::string& path, Format f);

}  // namespace amconv::cli

#include "cli/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace amconv::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "svg") return Format::Svg;
  throw std::invalid_argument("unknown format '" + name + "' (csv, json, svg)");
}

const char* extension(Format f) {
  switch (f) {
    case Format::Csv: return ".csv";
    case Format::Json: return ".json";
    case Format::Svg: return ".svg";
  }
  return ".csv";
}

void TableArtifact::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row width " + std::to_string(row.size()) +
                                " != column count " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void TableArtifact::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : metadata) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

std::size_t TableArtifact::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const TableArtifact& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    os << (j ? "," : "") << t.columns[j];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const TableArtifact& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    // JSON has no inf/nan; those become null.
    for (double x : row) {
      if (std::isfinite(x)) r.push_back(x);
      else r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = meta;
  doc["columns"] = t.columns;
  doc["rows"] = rows;
  return doc.dump(1) + "\n";
}

std::string to_svg(const TableArtifact& t) {
  constexpr double W = 640, H = 480, M = 50;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  if (t.columns.size() < 2 || t.rows.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const std::size_t xi = t.plot_x.empty() ? 0 : t.column_index(t.plot_x);
  const bool grouped = !t.plot_group.empty();
  const std::size_t gi = grouped ? t.column_index(t.plot_group) : 0;
  std::vector<std::size_t> ys;
  if (!t.plot_y.empty()) {
    for (const auto& name : t.plot_y) ys.push_back(t.column_index(name));
  } else {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (j != xi && !(grouped && j == gi)) ys.push_back(j);
    }
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& row : t.rows) {
    if (std::isfinite(row[xi])) {
      xmin = std::min(xmin, row[xi]);
      xmax = std::max(xmax, row[xi]);
    }
    for (std::size_t j : ys) {
      if (!std::isfinite(row[j])) continue;
      ymin = std::min(ymin, row[j]);
      ymax = std::max(ymax, row[j]);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\">" << t.columns[xi] << "</text>\n";
  os << "<text x=\"" << M << "\" y=\"" << H - M + 15 << "\">" << format_number(xmin) << "</text>\n";
  os << "<text x=\"" << W - M << "\" y=\"" << H - M + 15 << "\">" << format_number(xmax)
     << "</text>\n";
  os << "<text x=\"5\" y=\"" << M - 10 << "\">" << format_number(ymax) << "</text>\n";
  os << "<text x=\"5\" y=\"" << H - M << "\">" << format_number(ymin) << "</text>\n";

  // Row indices per group, first-appearance order.
  std::vector<std::vector<std::size_t>> groups;
  if (grouped) {
    std::vector<double> keys;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double key = t.rows[i][gi];
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(key);
        groups.emplace_back();
        groups.back().push_back(i);
      } else {
        groups[it - keys.begin()].push_back(i);
      }
    }
  } else {
    groups.emplace_back(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) groups[0][i] = i;
  }

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  for (std::size_t s = 0; s < ys.size(); ++s) {
    const std::size_t j = ys[s];
    const char* colour = palette[s % 6];
    for (const auto& rows : groups) {
      std::string pts;
      auto flush = [&] {
        if (!pts.empty()) {
          os << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"" << pts
             << "\"/>\n";
          pts.clear();
        }
      };
      for (std::size_t i : rows) {
        const auto& row = t.rows[i];
        if (!std::isfinite(row[xi]) || !std::isfinite(row[j])) {
          flush();
          continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(row[xi]), sy(row[j]));
        pts += buf;
      }
      flush();
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render(const TableArtifact& t, Format f) {
  switch (f) {
    case Format::Csv: return to_csv(t);
    case Format::Json: return to_json(t);
    case Format::Svg: return to_svg(t);
  }
  return to_csv(t);
}

void write_table(const TableArtifact& t, const std::string& path, Format f) {
  const std::string text = render(t, f);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace amconv::cli

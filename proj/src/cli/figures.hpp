// Figure-data presets. Each preset writes one or more tables into a
// directory, named <id>_<variant><ext>.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli/table.hpp"

namespace amconv::cli {

struct FigureOptions {
  std::string out_dir = ".";
  Format format = Format::Csv;
  std::optional<int> n_override;        // replaces every particle number of the preset
  std::optional<double> epsilon_override;  // replaces the preset's epsilon list
  int bins = 40;
};

/// Throws std::invalid_argument for an unknown id. Returns the paths written.
std::vector<std::string> write_figure(const std::string& id, const FigureOptions& options);

}  // namespace amconv::cli

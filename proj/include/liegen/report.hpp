#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "liegen/classify.hpp"
#include "liegen/discretize.hpp"

namespace liegen {

/// "x,g" header then one LF-terminated row per node, 12 significant digits.
void write_csv(std::ostream& os, const Grid& grid, const GridFunction& g);
void emit_csv(const std::filesystem::path& path, const Grid& grid, const GridFunction& g);

/// Generic two-column CSV with the given header names.
void write_series_csv(std::ostream& os, std::string_view x_name, std::string_view y_name,
                      const std::vector<double>& x, const std::vector<double>& y);

/// Standalone 800x500 SVG line plot of (x_j, g(j)) with axes and tick labels.
std::string render_svg(const Grid& grid, const GridFunction& g, std::string_view title);
void emit_svg(const std::filesystem::path& path, const Grid& grid, const GridFunction& g, std::string_view title);

}  // namespace liegen

#pragma once

// Trajectory CSV, SVG phase portraits and number formatting.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vofrac/core_model.hpp"

namespace vofrac {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Header `t,x1,..,xd` and one row per stored node.
std::string format_csv(const Trajectory& traj);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parse CSV produced by format_csv. Throws std::runtime_error on malformed input.
CsvTable parse_csv(std::string_view text);

/// Re-emit a parsed table in the same format as format_csv.
std::string format_csv(const CsvTable& table);

struct PortraitSeries {
    const Trajectory* trajectory;
    std::string label;
};

/// SVG document with one polyline per series, plotting component `x_index`
/// against `y_index` in a viewport fitted to the data bounds.
std::string format_svg(const std::vector<PortraitSeries>& series, std::size_t x_index,
                       std::size_t y_index);

/// Write text to a file, creating parent directories. Throws std::runtime_error.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace vofrac

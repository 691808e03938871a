#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracstab {

enum class OutputFormat { Csv, Json, Svg };

OutputFormat parse_format(const std::string& name);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

/// One line per row, 17 significant digits, LF endings.
std::string format_csv(const Table& table);

/// {"meta": meta, "data": [{column: value, ...}, ...]}.
std::string format_json(const Table& table, const nlohmann::json& meta);

/// Self-contained SVG line plot, one polyline per series. Non-finite points
/// break the polyline.
std::string format_svg(const std::vector<Series>& series, const PlotLabels& labels);

/// Writes through a sibling temporary file and renames on success, so a
/// failed write never leaves a partial file at `path`. Throws
/// std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Csv or Json rendering of `table` to `path`. Throws PreconditionError on
/// an empty table and for the Svg format (use write_plot).
void write_table(const Table& table, OutputFormat format, const std::filesystem::path& path,
                 const nlohmann::json& meta = nlohmann::json::object());

/// Throws PreconditionError when there is no series or no point.
void write_plot(const std::vector<Series>& series, const PlotLabels& labels,
                const std::filesystem::path& path);

}  // namespace fracstab

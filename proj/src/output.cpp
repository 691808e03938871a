#include "fracstab/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>
#include <stdexcept>

#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  throw PreconditionError("unknown output format '" + name + "'");
}

namespace {

std::ostringstream classic_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string short_number(double v) {
  auto os = classic_stream();
  os << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

std::string format_csv(const Table& table) {
  require(!table.columns.empty(), "format_csv: no columns");
  auto os = classic_stream();
  os << std::setprecision(17);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.columns.size(), "format_csv: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string format_json(const Table& table, const nlohmann::json& meta) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& row : table.rows) {
    require(row.size() == table.columns.size(), "format_json: row width mismatch");
    nlohmann::json entry = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      entry[table.columns[i]] = std::isfinite(row[i]) ? nlohmann::json(row[i]) : nlohmann::json();
    }
    data.push_back(std::move(entry));
  }
  nlohmann::json doc{{"meta", meta}, {"data", std::move(data)}};
  return doc.dump(2) + "\n";
}

std::string format_svg(const std::vector<Series>& series, const PlotLabels& labels) {
  require(!series.empty(), "format_svg: no series");
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  std::size_t points = 0;
  for (const Series& s : series) {
    require(s.x.size() == s.y.size(), "format_svg: x/y length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
      ++points;
    }
  }
  require(points > 0, "format_svg: no finite points");
  if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
  if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }

  constexpr double width = 800, height = 600;
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  static constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                      "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  auto os = classic_stream();
  os << std::fixed << std::setprecision(2);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"16\">" << escape_xml(labels.title) << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * k / 4.0;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(xv)
       << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << short_number(xv) << "</text>\n"
       << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\""
       << py(yv) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << short_number(yv)
       << "</text>\n";
  }
  // Zero axes when in range.
  if (x_lo < 0 && x_hi > 0) {
    os << "<line x1=\"" << px(0) << "\" y1=\"" << top << "\" x2=\"" << px(0) << "\" y2=\""
       << top + plot_h << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  if (y_lo < 0 && y_hi > 0) {
    os << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left + plot_w
       << "\" y2=\"" << py(0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << escape_xml(labels.x_axis) << "</text>\n"
     << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
     << top + plot_h / 2 << ")\">" << escape_xml(labels.y_axis) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = palette[s % palette.size()];
    os << "<g><title>" << escape_xml(series[s].label) << "</title>\n";
    bool open = false;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double x = series[s].x[i];
      const double y = series[s].y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) {
        if (open) os << "\"/>\n";
        open = false;
        continue;
      }
      if (!open) {
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
        open = true;
      } else {
        os << ' ';
      }
      os << px(x) << ',' << py(y);
    }
    if (open) os << "\"/>\n";
    os << "</g>\n";
  }
  if (series.size() <= 12) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double y = top + 15 + 16.0 * static_cast<double>(s);
      os << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << y << "\" x2=\""
         << left + plot_w - 125 << "\" y2=\"" << y << "\" stroke=\"" << palette[s % palette.size()]
         << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << left + plot_w - 120 << "\" y=\"" << y + 4
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(series[s].label)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.flush();
    if (!file) {
      file.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

void write_table(const Table& table, OutputFormat format, const std::filesystem::path& path,
                 const nlohmann::json& meta) {
  require(!table.rows.empty(), "write_table: empty table");
  switch (format) {
    case OutputFormat::Csv: write_text(path, format_csv(table)); return;
    case OutputFormat::Json: write_text(path, format_json(table, meta)); return;
    case OutputFormat::Svg: break;
  }
  throw PreconditionError("write_table: svg output goes through write_plot");
}

void write_plot(const std::vector<Series>& series, const PlotLabels& labels,
                const std::filesystem::path& path) {
  write_text(path, format_svg(series, labels));
}

}  // namespace fracstab

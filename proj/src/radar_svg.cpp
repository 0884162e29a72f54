#include "cnrsim/radar_svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

#include "cnrsim/errors.hpp"

namespace cnr {

namespace {

/// The six plotted axes, clockwise from the top. metric_index refers to
/// metric_names() order; nav availability is not an axis.
struct Axis {
  std::string_view label;
  std::size_t metric_index;
  bool maximized;
};

constexpr std::array<Axis, 6> kAxes = {{
    {"outage probability", 0, false},
    {"ergodic capacity", 1, true},
    {"positioning error", 2, false},
    {"timing error", 3, false},
    {"range resolution", 5, false},
    {"AoI", 6, false},
}};

/// Trace colours per integration level (axis-group colours live in the spec).
const char* level_color(IntegrationLevel level) {
  switch (level) {
    case IntegrationLevel::Traditional:
      return "#555555";
    case IntegrationLevel::FunctionLevel:
      return "#2e7d32";
    case IntegrationLevel::SignalLevel:
      return "#e65100";
  }
  return "#000000";
}

std::string fmt(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return std::string(buf.data());
}

/// Gain of `value` against `baseline` on one axis; always finite, >= 0.
/// NaN (unavailable metric) plots at the centre. A zero denominator means an
/// unbounded gain; it is clamped and then log-compressed like any other
/// large ratio.
double gain_ratio(double value, double baseline, bool maximized) {
  if (std::isnan(value) || std::isnan(baseline)) return 0.0;
  const double num = maximized ? value : baseline;
  const double den = maximized ? baseline : value;
  if (num == den) return 1.0;  // covers 0/0
  if (den <= 0.0) return 1e6;
  return std::min(num / den, 1e6);
}

}  // namespace

std::string render_radar_svg(const MetricsReport& report,
                             const RadarChartSpec& spec) {
  if (report.levels.empty()) {
    throw invalid_parameter_error("render_radar_svg: report has no levels");
  }

  // Baseline per axis: Traditional when plotted, else the worst level.
  const LevelReport* traditional = nullptr;
  for (const LevelReport& level : report.levels) {
    if (level.level == IntegrationLevel::Traditional) {
      traditional = &level;
      break;
    }
  }
  std::array<double, kAxes.size()> baseline{};
  for (std::size_t a = 0; a < kAxes.size(); ++a) {
    if (traditional != nullptr) {
      baseline[a] = traditional->metrics[kAxes[a].metric_index].mean;
      continue;
    }
    double worst = std::numeric_limits<double>::quiet_NaN();
    for (const LevelReport& level : report.levels) {
      const double v = level.metrics[kAxes[a].metric_index].mean;
      if (std::isnan(v)) continue;
      if (std::isnan(worst) ||
          (kAxes[a].maximized ? v < worst : v > worst)) {
        worst = v;
      }
    }
    baseline[a] = worst;
  }

  // Gains, display-compressed gains, and the chart-wide display maximum.
  const auto display = [&](double gain) {
    if (gain <= spec.radius_cap) return gain;
    return spec.radius_cap + std::log10(gain / spec.radius_cap);
  };
  std::vector<std::array<double, kAxes.size()>> radii(report.levels.size());
  double display_max = 1.0;
  for (std::size_t li = 0; li < report.levels.size(); ++li) {
    for (std::size_t a = 0; a < kAxes.size(); ++a) {
      const double v = report.levels[li].metrics[kAxes[a].metric_index].mean;
      const double d = display(gain_ratio(v, baseline[a], kAxes[a].maximized));
      radii[li][a] = d;
      display_max = std::max(display_max, d);
    }
  }

  const double cx = spec.width / 2.0;
  const double cy = spec.height / 2.0 + 10.0;
  const double scale = spec.plot_radius / display_max;
  const auto point = [&](std::size_t axis, double display_radius) {
    const double theta =
        static_cast<double>(axis) * 60.0 * std::numbers::pi / 180.0;
    const double r = display_radius * scale;
    return std::pair<double, double>(cx + r * std::sin(theta),
                                     cy - r * std::cos(theta));
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(spec.width) + "\" height=\"" + fmt(spec.height) +
         "\" viewBox=\"0 0 " + fmt(spec.width) + " " + fmt(spec.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + fmt(cx) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\" fill=\"#222222\">integration gains by "
         "functionality</text>\n";

  // Spokes and axis labels.
  const std::array<const char*, 6> axis_colors = {
      spec.comm_color, spec.comm_color, spec.nav_color,
      spec.nav_color,  spec.sensing_color, spec.sensing_color};
  for (std::size_t a = 0; a < kAxes.size(); ++a) {
    const auto [x, y] = point(a, display_max);
    svg += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(cy) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    const auto [lx, ly] = point(a, display_max * 1.12);
    svg += "<text x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"";
    svg += axis_colors[a];
    svg += "\">";
    svg += kAxes[a].label;
    svg += "</text>\n";
  }

  // Reference ring: the baseline (unit-gain) hexagon.
  std::string ring;
  for (std::size_t a = 0; a < kAxes.size(); ++a) {
    const auto [x, y] = point(a, 1.0);
    if (!ring.empty()) ring += ' ';
    ring += fmt(x) + "," + fmt(y);
  }
  svg += "<polygon points=\"" + ring +
         "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" "
         "stroke-dasharray=\"4 3\"/>\n";
  svg += "<text x=\"" + fmt(cx + 4.0) + "\" y=\"" + fmt(cy - 1.0 * scale - 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"10\" "
         "fill=\"#999999\">baseline (unit gain)</text>\n";

  // One polygon per level.
  for (std::size_t li = 0; li < report.levels.size(); ++li) {
    std::string points;
    for (std::size_t a = 0; a < kAxes.size(); ++a) {
      const auto [x, y] = point(a, radii[li][a]);
      if (!points.empty()) points += ' ';
      points += fmt(x) + "," + fmt(y);
    }
    const char* color = level_color(report.levels[li].level);
    svg += "<polygon points=\"" + points + "\" fill=\"" + color +
           "\" fill-opacity=\"0.12\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
  }

  // Legend, top-left.
  double ly = 48.0;
  for (const LevelReport& level : report.levels) {
    const char* color = level_color(level.level);
    svg += "<rect x=\"16\" y=\"" + fmt(ly - 10.0) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"34\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#222222\">" +
           level_name(level.level) + "</text>\n";
    ly += 18.0;
  }

  svg += "</svg>\n";
  return svg;
}

void emit_radar_svg(const MetricsReport& report, const RadarChartSpec& spec,
                    const std::string& path) {
  const std::string content = render_radar_svg(report, spec);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw io_error("cannot open '" + path + "' for writing", path);
  }
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.flush();
  if (!file) {
    throw io_error("error while writing '" + path + "'", path);
  }
}

}  // namespace cnr

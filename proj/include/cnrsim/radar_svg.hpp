#pragma once

#include <string>

#include "cnrsim/simulator.hpp"

namespace cnr {

/// Layout and normalization parameters of the radar (spider) chart.
///
/// The chart's six axes, in fixed clockwise order from the top, are outage
/// probability, ergodic capacity, positioning error, timing error, range
/// resolution, and AoI. Axis labels are coloured by functionality group
/// (communication, navigation, sensing). One closed polygon is drawn per
/// integration level.
///
/// Normalization: each axis value becomes a gain ratio against the baseline
/// level — baseline/value for minimized axes, value/baseline for the
/// maximized capacity axis — so the baseline traces the unit polygon and
/// "better" always points outward. The baseline is Traditional when plotted,
/// otherwise the per-axis worst level. Gains above `radius_cap` are
/// log-compressed (cap + log10(gain/cap)) so order-of-magnitude improvements
/// stay on the page; the drawn radius is the compressed gain as a fraction
/// of the largest compressed gain on the chart.
struct RadarChartSpec {
  double width = 640.0;
  double height = 540.0;
  double plot_radius = 185.0;   ///< Pixel radius of the largest gain.
  double radius_cap = 10.0;     ///< Gains beyond this are log-compressed.
  const char* comm_color = "#c0392b";     ///< Outage + capacity axis labels.
  const char* nav_color = "#2980b9";      ///< Positioning + timing labels.
  const char* sensing_color = "#8e44ad";  ///< Resolution + AoI labels.
};

/// Renders the radar chart as a self-contained SVG document. Pure function
/// of its inputs: identical report and spec give identical bytes. Throws
/// invalid_parameter_error when the report has no levels.
std::string render_radar_svg(const MetricsReport& report,
                             const RadarChartSpec& spec = {});

/// Renders and writes to `path`. Throws io_error when the file cannot be
/// written.
void emit_radar_svg(const MetricsReport& report, const RadarChartSpec& spec,
                    const std::string& path);

}  // namespace cnr

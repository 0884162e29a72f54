#pragma once

#include <string>
#include <vector>

#include "cnrsim/simulator.hpp"

namespace cnr {

/// Output selector for emit_report.
enum class OutputFormat { Csv, Json, Svg, All };

/// Parses "csv" | "json" | "svg" | "all"; throws invalid_parameter_error.
OutputFormat parse_format(const std::string& name);

/// CSV form of a report: header `level,metric,mean,stderr,ci_low,ci_high`,
/// then one row per (level, metric). Numbers are shortest round-trip
/// decimals; unavailable metrics render as nan. Ends with a newline.
std::string render_csv(const MetricsReport& report);

/// JSON form: master_seed, trials, config_fingerprint, then levels nested by
/// level name and metric name. Unavailable metrics serialize as null. Ends
/// with a newline.
std::string render_json(const MetricsReport& report);

/// Writes the selected format(s) into the directory `out_dir` (created if
/// missing) as report.csv / report.json / radar.svg. Returns the written
/// paths in emission order. Throws io_error on any filesystem failure.
std::vector<std::string> emit_report(const MetricsReport& report,
                                     OutputFormat format,
                                     const std::string& out_dir);

}  // namespace cnr

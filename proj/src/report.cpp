#include "cnrsim/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cnrsim/errors.hpp"
#include "cnrsim/radar_svg.hpp"

namespace cnr {

namespace {

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

nlohmann::ordered_json stats_json(const MetricStats& stats) {
  nlohmann::ordered_json j;
  // NaN means "metric unavailable" and has no JSON number; emit null.
  const auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  j["mean"] = number(stats.mean);
  j["stderr"] = number(stats.stderr_mean);
  j["ci_low"] = number(stats.ci_low);
  j["ci_high"] = number(stats.ci_high);
  j["n"] = stats.n;
  j["deterministic"] = stats.deterministic;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw io_error("cannot open '" + path + "' for writing", path);
  }
  file.write(content.data(),
             static_cast<std::streamsize>(content.size()));
  file.flush();
  if (!file) {
    throw io_error("error while writing '" + path + "'", path);
  }
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  if (name == "all") return OutputFormat::All;
  throw invalid_parameter_error("unknown output format '" + name +
                                "' (expected csv, json, svg or all)");
}

std::string render_csv(const MetricsReport& report) {
  std::string out = "level,metric,mean,stderr,ci_low,ci_high\n";
  const auto names = metric_names();
  for (const LevelReport& level : report.levels) {
    const std::string level_str = level_name(level.level);
    for (std::size_t m = 0; m < level.metrics.size(); ++m) {
      const MetricStats& stats = level.metrics[m];
      out += level_str;
      out += ',';
      out += names[m];
      out += ',';
      out += format_number(stats.mean);
      out += ',';
      out += format_number(stats.stderr_mean);
      out += ',';
      out += format_number(stats.ci_low);
      out += ',';
      out += format_number(stats.ci_high);
      out += '\n';
    }
  }
  return out;
}

std::string render_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["master_seed"] = report.master_seed;
  j["trials"] = report.trials;
  j["config_fingerprint"] = report.config_fingerprint;
  nlohmann::ordered_json levels = nlohmann::ordered_json::object();
  const auto names = metric_names();
  for (const LevelReport& level : report.levels) {
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    for (std::size_t m = 0; m < level.metrics.size(); ++m) {
      metrics[std::string(names[m])] = stats_json(level.metrics[m]);
    }
    levels[level_name(level.level)] = std::move(metrics);
  }
  j["levels"] = std::move(levels);
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(const MetricsReport& report,
                                     OutputFormat format,
                                     const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw io_error("cannot create output directory '" + out_dir + "': " +
                       ec.message(),
                   out_dir);
  }
  std::vector<std::string> written;
  const auto emit = [&](const char* name, const std::string& content) {
    const std::string path = (fs::path(out_dir) / name).string();
    write_file(path, content);
    written.push_back(path);
  };
  if (format == OutputFormat::Csv || format == OutputFormat::All) {
    emit("report.csv", render_csv(report));
  }
  if (format == OutputFormat::Json || format == OutputFormat::All) {
    emit("report.json", render_json(report));
  }
  if (format == OutputFormat::Svg || format == OutputFormat::All) {
    emit("radar.svg", render_radar_svg(report));
  }
  return written;
}

}  // namespace cnr

#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cnrsim/errors.hpp"
#include "cnrsim/radar_svg.hpp"
#include "cnrsim/report.hpp"

using cnr::IntegrationLevel;
using cnr::LevelReport;
using cnr::MetricsReport;
using cnr::MetricStats;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MetricStats stats(double mean, double se, double lo, double hi, long n,
                  bool deterministic) {
  MetricStats s;
  s.mean = mean;
  s.stderr_mean = se;
  s.ci_low = lo;
  s.ci_high = hi;
  s.n = n;
  s.deterministic = deterministic;
  return s;
}

MetricStats exact(double mean, long n) {
  return stats(mean, 0.0, mean, mean, n, true);
}

MetricStats unavailable() { return stats(kNaN, 0.0, kNaN, kNaN, 0, false); }

/// Two-level synthetic report with values whose shortest decimal forms are
/// obvious, including one unavailable metric.
MetricsReport sample_report() {
  MetricsReport report;
  report.trials = 8;
  report.master_seed = 42;
  report.config_fingerprint = "00deadbeef00cafe";

  LevelReport trad;
  trad.level = IntegrationLevel::Traditional;
  trad.metrics = {exact(0.5, 8),    exact(250000.0, 8), exact(3.5, 8),
                  exact(1e-07, 8),  exact(0.875, 8),    exact(12.0, 8),
                  exact(1922.5, 8)};

  LevelReport sig;
  sig.level = IntegrationLevel::SignalLevel;
  sig.metrics = {stats(0.25, 0.125, 0.125, 0.375, 8, false),
                 exact(500000.0, 8),
                 unavailable(),
                 exact(5e-08, 8),
                 exact(1.0, 8),
                 exact(0.5, 8),
                 exact(240.25, 8)};

  report.levels = {trad, sig};
  return report;
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("cnrsim_report_test_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("parse_format accepts the four documented names") {
  CHECK(cnr::parse_format("csv") == cnr::OutputFormat::Csv);
  CHECK(cnr::parse_format("json") == cnr::OutputFormat::Json);
  CHECK(cnr::parse_format("svg") == cnr::OutputFormat::Svg);
  CHECK(cnr::parse_format("all") == cnr::OutputFormat::All);
  CHECK_THROWS_AS(cnr::parse_format("yaml"), cnr::invalid_parameter_error);
  CHECK_THROWS_AS(cnr::parse_format("CSV"), cnr::invalid_parameter_error);
}

TEST_CASE("render_csv emits shortest-round-trip rows with nan placeholders") {
  const std::string expected =
      "level,metric,mean,stderr,ci_low,ci_high\n"
      "traditional,outage_probability,0.5,0,0.5,0.5\n"
      "traditional,ergodic_capacity_bps,250000,0,250000,250000\n"
      "traditional,positioning_error_m,3.5,0,3.5,3.5\n"
      "traditional,timing_error_s,1e-07,0,1e-07,1e-07\n"
      "traditional,nav_availability,0.875,0,0.875,0.875\n"
      "traditional,range_resolution_m,12,0,12,12\n"
      "traditional,aoi_s,1922.5,0,1922.5,1922.5\n"
      "signal_level,outage_probability,0.25,0.125,0.125,0.375\n"
      "signal_level,ergodic_capacity_bps,5e+05,0,5e+05,5e+05\n"
      "signal_level,positioning_error_m,nan,0,nan,nan\n"
      "signal_level,timing_error_s,5e-08,0,5e-08,5e-08\n"
      "signal_level,nav_availability,1,0,1,1\n"
      "signal_level,range_resolution_m,0.5,0,0.5,0.5\n"
      "signal_level,aoi_s,240.25,0,240.25,240.25\n";
  CHECK(cnr::render_csv(sample_report()) == expected);
}

TEST_CASE("render_json is ordered, typed, and null for unavailable values") {
  const MetricsReport report = sample_report();
  const std::string text = cnr::render_json(report);
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');

  // Top-level key order is fixed.
  CHECK(text.find("\"master_seed\"") < text.find("\"trials\""));
  CHECK(text.find("\"trials\"") < text.find("\"config_fingerprint\""));
  CHECK(text.find("\"config_fingerprint\"") < text.find("\"levels\""));

  const auto j = nlohmann::ordered_json::parse(text);
  CHECK(j["master_seed"] == 42);
  CHECK(j["trials"] == 8);
  CHECK(j["config_fingerprint"] == "00deadbeef00cafe");
  REQUIRE(j["levels"].is_object());
  REQUIRE(j["levels"].contains("traditional"));
  REQUIRE(j["levels"].contains("signal_level"));

  // Metric keys appear in metric_names() order inside each level.
  const auto names = cnr::metric_names();
  std::size_t i = 0;
  for (const auto& [key, value] : j["levels"]["traditional"].items()) {
    REQUIRE(i < names.size());
    CHECK(key == names[i]);
    ++i;
  }
  CHECK(i == names.size());

  const auto& outage = j["levels"]["traditional"]["outage_probability"];
  CHECK(outage["mean"] == 0.5);
  CHECK(outage["stderr"] == 0.0);
  CHECK(outage["ci_low"] == 0.5);
  CHECK(outage["ci_high"] == 0.5);
  CHECK(outage["n"] == 8);
  CHECK(outage["deterministic"] == true);

  const auto& missing = j["levels"]["signal_level"]["positioning_error_m"];
  CHECK(missing["mean"].is_null());
  CHECK(missing["ci_low"].is_null());
  CHECK(missing["ci_high"].is_null());
  CHECK(missing["n"] == 0);
  CHECK(missing["deterministic"] == false);

  const auto& spread = j["levels"]["signal_level"]["outage_probability"];
  CHECK(spread["mean"] == 0.25);
  CHECK(spread["stderr"] == 0.125);
  CHECK(spread["deterministic"] == false);
}

TEST_CASE("emit_report writes the selected files and reports their paths") {
  const MetricsReport report = sample_report();
  TempDir tmp;

  SUBCASE("csv only") {
    const auto written = cnr::emit_report(report, cnr::OutputFormat::Csv,
                                          (tmp.path / "csv").string());
    REQUIRE(written.size() == 1);
    CHECK(written[0] ==
          (tmp.path / "csv" / "report.csv").string());
    CHECK(slurp(written[0]) == cnr::render_csv(report));
  }

  SUBCASE("all three formats, nested directory created on demand") {
    const std::string out = (tmp.path / "a" / "b").string();
    const auto written = cnr::emit_report(report, cnr::OutputFormat::All, out);
    REQUIRE(written.size() == 3);
    CHECK(std::filesystem::path(written[0]).filename() == "report.csv");
    CHECK(std::filesystem::path(written[1]).filename() == "report.json");
    CHECK(std::filesystem::path(written[2]).filename() == "radar.svg");
    CHECK(slurp(written[0]) == cnr::render_csv(report));
    CHECK(slurp(written[1]) == cnr::render_json(report));
    CHECK(slurp(written[2]) == cnr::render_radar_svg(report));
  }

  SUBCASE("unwritable destination raises io_error") {
    const std::string blocker = (tmp.path / "blocker").string();
    std::ofstream(blocker) << "file, not a directory\n";
    CHECK_THROWS_AS(cnr::emit_report(report, cnr::OutputFormat::Csv,
                                     blocker + "/sub"),
                    cnr::io_error);
  }
}

TEST_CASE("radar chart rejects an empty report") {
  MetricsReport report;
  report.trials = 1;
  CHECK_THROWS_AS(cnr::render_radar_svg(report), cnr::invalid_parameter_error);
}

TEST_CASE("radar chart output is deterministic") {
  const MetricsReport report = sample_report();
  const std::string a = cnr::render_radar_svg(report);
  const std::string b = cnr::render_radar_svg(report);
  CHECK(a == b);
}

TEST_CASE("radar chart geometry with a traditional baseline") {
  // Gains chosen by hand: signal level improves outage x10, capacity x2,
  // positioning and timing x100 (log-compressed to display 11), range
  // resolution x24, AoI x10. The function level adds a NaN AoI.
  MetricsReport report;
  report.trials = 4;
  report.master_seed = 1;
  report.config_fingerprint = "0";

  LevelReport trad;
  trad.level = IntegrationLevel::Traditional;
  trad.metrics = {exact(0.5, 4),   exact(1e5, 4),  exact(4.0, 4),
                  exact(1e-07, 4), exact(0.9, 4),  exact(12.0, 4),
                  exact(28000.0, 4)};

  LevelReport func;
  func.level = IntegrationLevel::FunctionLevel;
  func.metrics = {exact(0.5, 4),   exact(1e5, 4), exact(0.4, 4),
                  exact(1e-08, 4), exact(0.9, 4), exact(6.0, 4),
                  unavailable()};

  LevelReport sig;
  sig.level = IntegrationLevel::SignalLevel;
  sig.metrics = {exact(0.05, 4),  exact(2e5, 4), exact(0.04, 4),
                 exact(1e-09, 4), exact(0.9, 4), exact(0.5, 4),
                 exact(2800.0, 4)};
  report.levels = {trad, func, sig};

  const std::string svg = cnr::render_radar_svg(report);

  CHECK(svg.find("integration gains by functionality") != std::string::npos);
  CHECK(svg.find("baseline (unit gain)") != std::string::npos);
  CHECK(svg.find("stroke-dasharray=\"4 3\"") != std::string::npos);

  // display_max is 11 (gain 100 -> 10 + log10(10)), so the unit-gain ring
  // sits at radius 185/11 around the centre (320, 280).
  const std::string unit_ring =
      "320.00,263.18 334.56,271.59 334.56,288.41 320.00,296.82 "
      "305.44,288.41 305.44,271.59";
  // Once for the dashed reference ring, once for the traditional polygon,
  // whose gains are all exactly 1 against itself.
  CHECK(count_occurrences(svg, unit_ring) == 2);

  // The signal level's positioning axis reaches the full plot radius.
  CHECK(svg.find("480.21,372.50") != std::string::npos);
  // The function level's unavailable AoI collapses to the centre.
  const std::string func_polygon_start = "fill=\"#2e7d32\"";
  REQUIRE(svg.find(func_polygon_start) != std::string::npos);
  CHECK(svg.find("320.00,280.00") != std::string::npos);

  // One reference ring plus one polygon per level.
  CHECK(count_occurrences(svg, "<polygon") == 4);

  // Axis label colours by functionality group, trace colours by level.
  CHECK(count_occurrences(svg, "#c0392b") == 2);
  CHECK(count_occurrences(svg, "#2980b9") == 2);
  CHECK(count_occurrences(svg, "#8e44ad") == 2);
  CHECK(svg.find("#555555") != std::string::npos);
  CHECK(svg.find("#2e7d32") != std::string::npos);
  CHECK(svg.find("#e65100") != std::string::npos);
  CHECK(svg.find(">traditional</text>") != std::string::npos);
  CHECK(svg.find(">function_level</text>") != std::string::npos);
  CHECK(svg.find(">signal_level</text>") != std::string::npos);

  // Six axis labels, coloured.
  CHECK(svg.find(">outage probability</text>") != std::string::npos);
  CHECK(svg.find(">ergodic capacity</text>") != std::string::npos);
  CHECK(svg.find(">positioning error</text>") != std::string::npos);
  CHECK(svg.find(">timing error</text>") != std::string::npos);
  CHECK(svg.find(">range resolution</text>") != std::string::npos);
  CHECK(svg.find(">AoI</text>") != std::string::npos);
}

TEST_CASE("radar chart falls back to the per-axis worst baseline") {
  // No traditional level in the report: the worst level per axis becomes
  // the unit ring. Function level is worse on every axis (including lowest
  // capacity), signal level is exactly twice as good everywhere.
  MetricsReport report;
  report.trials = 4;
  report.master_seed = 1;
  report.config_fingerprint = "0";

  LevelReport func;
  func.level = IntegrationLevel::FunctionLevel;
  func.metrics = {exact(0.4, 4),   exact(1e5, 4), exact(1.0, 4),
                  exact(1e-07, 4), exact(0.9, 4), exact(8.0, 4),
                  exact(2000.0, 4)};

  LevelReport sig;
  sig.level = IntegrationLevel::SignalLevel;
  sig.metrics = {exact(0.2, 4),   exact(2e5, 4), exact(0.5, 4),
                 exact(5e-08, 4), exact(0.9, 4), exact(4.0, 4),
                 exact(1000.0, 4)};
  report.levels = {func, sig};

  const std::string svg = cnr::render_radar_svg(report);

  // display_max is 2, so the unit ring sits at radius 92.5 and the signal
  // polygon at the full 185.
  const std::string unit_ring =
      "320.00,187.50 400.11,233.75 400.11,326.25 320.00,372.50 "
      "239.89,326.25 239.89,233.75";
  CHECK(count_occurrences(svg, unit_ring) == 2);  // ring + function level
  CHECK(svg.find("320.00,95.00") != std::string::npos);
  CHECK(count_occurrences(svg, "<polygon") == 3);
}

TEST_CASE("emit_radar_svg writes the rendered bytes") {
  const MetricsReport report = sample_report();
  TempDir tmp;
  const std::string path = (tmp.path / "chart.svg").string();
  cnr::emit_radar_svg(report, cnr::RadarChartSpec{}, path);
  CHECK(slurp(path) == cnr::render_radar_svg(report));

  CHECK_THROWS_AS(cnr::emit_radar_svg(report, cnr::RadarChartSpec{},
                                      (tmp.path / "no" / "dir.svg").string()),
                  cnr::io_error);
}

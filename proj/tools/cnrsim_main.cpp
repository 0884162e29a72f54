// cnrsim — Monte Carlo study of communication/navigation/sensing integration
// in a LEO mega-constellation. Parses a scenario config, runs the requested
// integration levels, and writes CSV/JSON/SVG reports.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnrsim/config.hpp"
#include "cnrsim/errors.hpp"
#include "cnrsim/radar_svg.hpp"
#include "cnrsim/report.hpp"
#include "cnrsim/simulator.hpp"

namespace {

/// Parsed command line. Defaults: all levels, 10^4 trials, seed 42, all
/// formats, current directory.
struct RunSpec {
  std::string config_path;
  std::string levels_csv = "traditional,function_level,signal_level";
  long trials = 10000;
  std::uint64_t seed = 42;
  std::string format = "all";
  std::string out_dir = ".";
  bool print_config = false;
};

std::vector<cnr::IntegrationLevel> parse_levels(const std::string& csv) {
  std::vector<cnr::IntegrationLevel> levels;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::size_t end = (comma == std::string::npos) ? csv.size() : comma;
    std::string token = csv.substr(start, end - start);
    // trim surrounding blanks
    while (!token.empty() && token.front() == ' ') token.erase(0, 1);
    while (!token.empty() && token.back() == ' ') token.pop_back();
    if (!token.empty()) {
      levels.push_back(cnr::parse_level(token));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (levels.empty()) {
    throw cnr::invalid_parameter_error("--levels selected no levels");
  }
  return levels;
}

int run(const RunSpec& spec) {
  const cnr::ScenarioConfig config = spec.config_path.empty()
                                         ? cnr::ScenarioConfig{}
                                         : cnr::parse_config(spec.config_path);
  if (spec.print_config) {
    std::fputs(cnr::serialize_config(config).c_str(), stdout);
    return 0;
  }
  const std::vector<cnr::IntegrationLevel> levels =
      parse_levels(spec.levels_csv);
  const cnr::OutputFormat format = cnr::parse_format(spec.format);

  std::printf("cnrsim: %zu level(s), %ld trial(s), seed %llu, config %s\n",
              levels.size(), spec.trials,
              static_cast<unsigned long long>(spec.seed),
              cnr::config_fingerprint(config).c_str());
  const cnr::MetricsReport report =
      cnr::run_experiment(levels, config, spec.trials, spec.seed);

  // Terminal summary: one line per (level, metric).
  const auto names = cnr::metric_names();
  for (const cnr::LevelReport& level : report.levels) {
    std::printf("%s:\n", cnr::level_name(level.level).c_str());
    for (std::size_t m = 0; m < level.metrics.size(); ++m) {
      const cnr::MetricStats& s = level.metrics[m];
      if (s.deterministic) {
        std::printf("  %-22s %.6g\n", std::string(names[m]).c_str(), s.mean);
      } else {
        std::printf("  %-22s %.6g  (stderr %.3g, n %ld)\n",
                    std::string(names[m]).c_str(), s.mean, s.stderr_mean,
                    s.n);
      }
    }
  }

  const std::vector<std::string> written =
      cnr::emit_report(report, format, spec.out_dir);
  for (const std::string& path : written) {
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunSpec spec;
  CLI::App app{
      "Monte Carlo evaluation of integrated communication, navigation and "
      "remote sensing in a LEO mega-constellation"};
  app.add_option("--config", spec.config_path,
                 "Scenario config file (defaults apply when omitted)");
  app.add_option("--levels", spec.levels_csv,
                 "Comma-separated integration levels: traditional, "
                 "function_level, signal_level");
  app.add_option("--trials", spec.trials, "Monte Carlo trials per level")
      ->capture_default_str();
  app.add_option("--seed", spec.seed, "Master seed")->capture_default_str();
  app.add_option("--format", spec.format, "Output format: csv|json|svg|all")
      ->capture_default_str();
  app.add_option("--out", spec.out_dir, "Output directory")
      ->capture_default_str();
  app.add_flag("--print-config", spec.print_config,
               "Print the effective config in canonical form and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help itself for -h; map flag errors to exit code 1.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return run(spec);
  } catch (const cnr::io_error& e) {
    std::fprintf(stderr, "cnrsim: I/O error: %s\n", e.what());
    return 2;
  } catch (const cnr::error& e) {
    std::fprintf(stderr, "cnrsim: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cnrsim: unexpected error: %s\n", e.what());
    return 1;
  }
}

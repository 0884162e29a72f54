#include <doctest.h>

#include <cmath>
#include <vector>

#include "cnrsim/config.hpp"
#include "cnrsim/errors.hpp"
#include "cnrsim/report.hpp"
#include "cnrsim/simulator.hpp"

using cnr::IntegrationLevel;
using cnr::MetricSelection;
using cnr::MetricsReport;
using cnr::ScenarioConfig;
using cnr::TrialMetrics;

namespace {

/// Desk-sized scenario so simulator tests stay fast.
ScenarioConfig small_config() {
  ScenarioConfig config;
  config.comm_satellites = 400;
  config.nav_satellites = 60;
  config.sensing_satellites = 60;
  config.vehicle_count = 25;
  return config;
}

const std::vector<IntegrationLevel> kAllLevels = {
    IntegrationLevel::Traditional, IntegrationLevel::FunctionLevel,
    IntegrationLevel::SignalLevel};

bool same_value(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

TEST_CASE("trial_seed derives from the master seed and trial index only") {
  CHECK(cnr::trial_seed(42, 0) == cnr::derive_seed(42, 0));
  CHECK(cnr::trial_seed(42, 17) == cnr::derive_seed(42, 17));
  CHECK(cnr::trial_seed(42, 0) != cnr::trial_seed(42, 1));
  CHECK(cnr::trial_seed(42, 5) != cnr::trial_seed(43, 5));
}

TEST_CASE("metric_names lists the seven reported metrics in order") {
  const auto names = cnr::metric_names();
  REQUIRE(names.size() == 7);
  CHECK(names[0] == "outage_probability");
  CHECK(names[1] == "ergodic_capacity_bps");
  CHECK(names[2] == "positioning_error_m");
  CHECK(names[3] == "timing_error_s");
  CHECK(names[4] == "nav_availability");
  CHECK(names[5] == "range_resolution_m");
  CHECK(names[6] == "aoi_s");
}

TEST_CASE("run_trial is bit-reproducible") {
  const ScenarioConfig config = small_config();
  const std::uint64_t seed = cnr::trial_seed(42, 3);
  const TrialMetrics a =
      cnr::run_trial(IntegrationLevel::Traditional, config, seed);
  const TrialMetrics b =
      cnr::run_trial(IntegrationLevel::Traditional, config, seed);
  CHECK(same_value(a.outage_probability, b.outage_probability));
  CHECK(same_value(a.outage_closed_form, b.outage_closed_form));
  CHECK(same_value(a.ergodic_capacity_bps, b.ergodic_capacity_bps));
  CHECK(same_value(a.positioning_error_m, b.positioning_error_m));
  CHECK(same_value(a.timing_error_s, b.timing_error_s));
  CHECK(same_value(a.nav_availability, b.nav_availability));
  CHECK(same_value(a.range_resolution_m, b.range_resolution_m));
  CHECK(same_value(a.aoi_s, b.aoi_s));

  const TrialMetrics c =
      cnr::run_trial(IntegrationLevel::Traditional, config,
                     cnr::trial_seed(42, 4));
  // A different trial seed redraws the geometry; the continuous metrics
  // almost surely move.
  CHECK(a.positioning_error_m != c.positioning_error_m);
}

TEST_CASE("metric selection leaves computed groups untouched") {
  const ScenarioConfig config = small_config();
  const std::uint64_t seed = cnr::trial_seed(7, 0);
  const TrialMetrics full =
      cnr::run_trial(IntegrationLevel::Traditional, config, seed);

  MetricSelection nav_only;
  nav_only.comm = false;
  nav_only.sensing = false;
  const TrialMetrics nav =
      cnr::run_trial(IntegrationLevel::Traditional, config, seed, nav_only);
  CHECK(std::isnan(nav.outage_probability));
  CHECK(std::isnan(nav.ergodic_capacity_bps));
  CHECK(std::isnan(nav.range_resolution_m));
  CHECK(std::isnan(nav.aoi_s));
  // Skipping the other groups must not shift the navigation results.
  CHECK(same_value(nav.positioning_error_m, full.positioning_error_m));
  CHECK(same_value(nav.timing_error_s, full.timing_error_s));
  CHECK(same_value(nav.nav_availability, full.nav_availability));

  MetricSelection comm_only;
  comm_only.nav = false;
  comm_only.sensing = false;
  const TrialMetrics comm =
      cnr::run_trial(IntegrationLevel::Traditional, config, seed, comm_only);
  CHECK(std::isnan(comm.positioning_error_m));
  CHECK(same_value(comm.outage_probability, full.outage_probability));
  CHECK(same_value(comm.outage_closed_form, full.outage_closed_form));
  CHECK(same_value(comm.ergodic_capacity_bps, full.ergodic_capacity_bps));
}

TEST_CASE("sensing metrics are deterministic given the level") {
  const ScenarioConfig config;  // published defaults
  MetricSelection sensing_only;
  sensing_only.comm = false;
  sensing_only.nav = false;

  const TrialMetrics t1 = cnr::run_trial(IntegrationLevel::Traditional, config,
                                         cnr::trial_seed(1, 0), sensing_only);
  const TrialMetrics t2 = cnr::run_trial(IntegrationLevel::Traditional, config,
                                         cnr::trial_seed(99, 7), sensing_only);
  CHECK(t1.range_resolution_m == t2.range_resolution_m);
  CHECK(t1.aoi_s == t2.aoi_s);
  CHECK(t1.range_resolution_m ==
        doctest::Approx(11.991698320000001).epsilon(1e-12));
  CHECK(t1.aoi_s == doctest::Approx(28844.69911011547).epsilon(1e-12));

  const TrialMetrics func = cnr::run_trial(
      IntegrationLevel::FunctionLevel, config, cnr::trial_seed(1, 0),
      sensing_only);
  CHECK(func.range_resolution_m ==
        doctest::Approx(5.995849160000001).epsilon(1e-12));
  CHECK(func.aoi_s == doctest::Approx(15122.234955505774).epsilon(1e-12));

  const TrialMetrics sig = cnr::run_trial(
      IntegrationLevel::SignalLevel, config, cnr::trial_seed(1, 0),
      sensing_only);
  CHECK(sig.range_resolution_m ==
        doctest::Approx(0.49965409666666677).epsilon(1e-12));
  CHECK(sig.aoi_s == doctest::Approx(1922.2349555057735).epsilon(1e-12));
}

TEST_CASE("a constellation without sensors reports no sensing metrics") {
  ScenarioConfig config = small_config();
  config.sensing_satellites = 0;
  const TrialMetrics t = cnr::run_trial(IntegrationLevel::Traditional, config,
                                        cnr::trial_seed(5, 0));
  CHECK(std::isnan(t.range_resolution_m));
  CHECK(std::isnan(t.aoi_s));

  // Aggregated over an experiment the metric stays unavailable: n = 0.
  const MetricsReport report = cnr::run_experiment(
      std::vector<IntegrationLevel>{IntegrationLevel::Traditional}, config, 3,
      11);
  const auto& aoi = report.levels[0].metrics[6];
  CHECK(aoi.n == 0);
  CHECK(std::isnan(aoi.mean));
}

TEST_CASE("navigation without enough anchors is counted unavailable") {
  ScenarioConfig config = small_config();
  config.gps_enabled = false;
  config.nav_satellites = 2;  // at most 2 anchors: never a fix
  const TrialMetrics t = cnr::run_trial(IntegrationLevel::Traditional, config,
                                        cnr::trial_seed(5, 0));
  CHECK(t.nav_availability == 0.0);
  CHECK(std::isnan(t.positioning_error_m));
  CHECK(std::isnan(t.timing_error_s));
}

TEST_CASE("run_experiment aggregates exactly like a manual pass") {
  const ScenarioConfig config = small_config();
  const long trials = 4;
  const std::uint64_t master = 2025;

  const MetricsReport report = cnr::run_experiment(
      std::vector<IntegrationLevel>{IntegrationLevel::Traditional}, config,
      trials, master);
  REQUIRE(report.levels.size() == 1);
  REQUIRE(report.levels[0].metrics.size() == 7);
  CHECK(report.trials == trials);
  CHECK(report.master_seed == master);
  CHECK(report.config_fingerprint == cnr::config_fingerprint(config));

  std::vector<TrialMetrics> manual;
  for (long i = 0; i < trials; ++i) {
    manual.push_back(cnr::run_trial(IntegrationLevel::Traditional, config,
                                    cnr::trial_seed(master, i)));
  }
  // Reproduce the two-pass mean/stderr for the outage metric.
  double sum = 0.0;
  for (const TrialMetrics& t : manual) sum += t.outage_probability;
  const double mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (const TrialMetrics& t : manual) {
    const double d = t.outage_probability - mean;
    ss += d * d;
  }
  const double stderr_mean =
      std::sqrt(ss / static_cast<double>(trials - 1) /
                static_cast<double>(trials));

  const auto& outage = report.levels[0].metrics[0];
  CHECK(outage.n == trials);
  CHECK(outage.mean == mean);
  CHECK(outage.stderr_mean == stderr_mean);
  CHECK(outage.ci_low == mean - 1.96 * stderr_mean);
  CHECK(outage.ci_high == mean + 1.96 * stderr_mean);
  CHECK(outage.deterministic == false);

  // The sensing axis is constant across trials: flagged deterministic with
  // zero spread.
  const auto& aoi = report.levels[0].metrics[6];
  CHECK(aoi.deterministic == true);
  CHECK(aoi.stderr_mean == 0.0);
  CHECK(aoi.ci_low == aoi.mean);
  CHECK(aoi.ci_high == aoi.mean);
}

TEST_CASE("thread count never changes the report") {
  const ScenarioConfig config = small_config();
  const MetricsReport serial =
      cnr::run_experiment(kAllLevels, config, 6, 97, 1);
  const MetricsReport threaded =
      cnr::run_experiment(kAllLevels, config, 6, 97, 4);
  CHECK(cnr::render_csv(serial) == cnr::render_csv(threaded));
  CHECK(cnr::render_json(serial) == cnr::render_json(threaded));

  const MetricsReport oversubscribed =
      cnr::run_experiment(kAllLevels, config, 2, 97, 64);
  CHECK(oversubscribed.levels.size() == 3);
}

TEST_CASE("standard error shrinks like one over sqrt(trials)") {
  // Outage is a bounded per-trial average, so its aggregate obeys the CLT
  // cleanly (the positioning error has occasional near-singular geometries
  // and much heavier tails). Lower the comm mask so coverage actually
  // fluctuates at this constellation size.
  ScenarioConfig config = small_config();
  config.comm_elevation_mask_deg = 20.0;
  MetricSelection comm_only;
  comm_only.nav = false;
  comm_only.sensing = false;
  const std::vector<IntegrationLevel> one = {IntegrationLevel::Traditional};

  const MetricsReport small =
      cnr::run_experiment(one, config, 128, 42, 1, comm_only);
  const MetricsReport large =
      cnr::run_experiment(one, config, 512, 42, 1, comm_only);
  const double se_small = small.levels[0].metrics[0].stderr_mean;
  const double se_large = large.levels[0].metrics[0].stderr_mean;
  REQUIRE(se_small > 0.0);
  REQUIRE(se_large > 0.0);
  // Quadrupling the trials should halve the standard error, loosely.
  const double ratio = se_small / se_large;
  CHECK(ratio > 1.4);
  CHECK(ratio < 2.9);
}

TEST_CASE("run_experiment validates its arguments") {
  const ScenarioConfig config = small_config();
  CHECK_THROWS_AS(
      cnr::run_experiment(std::vector<IntegrationLevel>{}, config, 5, 1),
      cnr::invalid_parameter_error);
  CHECK_THROWS_AS(cnr::run_experiment(kAllLevels, config, 0, 1),
                  cnr::invalid_parameter_error);
  ScenarioConfig bad = config;
  bad.altitude_km = -5.0;
  CHECK_THROWS_AS(cnr::run_experiment(kAllLevels, bad, 5, 1),
                  cnr::config_validation_error);
}

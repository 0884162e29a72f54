#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnrsim/scenario.hpp"

namespace cnr {

/// Per-trial outcome, averaged over the vehicle population. Metrics not
/// computed (deselected, or positioning with zero available vehicles) are
/// quiet NaN.
struct TrialMetrics {
  double outage_probability = 0.0;      ///< Fraction of vehicles in outage.
  double outage_closed_form = 0.0;      ///< Mean closed-form outage prob.
  double ergodic_capacity_bps = 0.0;    ///< Mean over vehicles.
  double positioning_error_m = 0.0;     ///< Mean over available vehicles.
  double timing_error_s = 0.0;          ///< Mean over available vehicles.
  double nav_availability = 0.0;        ///< Fraction of vehicles with a fix.
  double range_resolution_m = 0.0;
  double aoi_s = 0.0;
};

/// Which functionality groups a trial evaluates. Skipping groups leaves
/// their metrics NaN; it never changes the values of the computed ones
/// (each group draws from its own random substream).
struct MetricSelection {
  bool comm = true;
  bool nav = true;
  bool sensing = true;
};

/// Aggregate of one metric over the trials that produced it.
struct MetricStats {
  double mean = 0.0;
  double stderr_mean = 0.0;  ///< Sample stddev / sqrt(n); 0 when n < 2.
  double ci_low = 0.0;       ///< mean -/+ 1.96 * stderr_mean
  double ci_high = 0.0;
  long n = 0;                ///< Trials contributing (NaN trials excluded).
  bool deterministic = false;  ///< True when every trial agreed exactly.
};

/// Names and order of the reported metrics (7 per level).
std::span<const std::string_view> metric_names();

/// Aggregated metrics of one integration level, in metric_names() order.
struct LevelReport {
  IntegrationLevel level = IntegrationLevel::Traditional;
  std::vector<MetricStats> metrics;
};

/// Everything emit_report/emit_radar_svg need: per-level aggregates plus the
/// reproducibility envelope (seed, trial count, config fingerprint).
struct MetricsReport {
  std::vector<LevelReport> levels;
  long trials = 0;
  std::uint64_t master_seed = 0;
  std::string config_fingerprint;
};

/// Seed of trial `index`: derive_seed(master_seed, index). Deliberately
/// independent of the integration level, so levels run on paired geometry
/// and fading streams and cross-level differences are pure treatment
/// effects.
std::uint64_t trial_seed(std::uint64_t master_seed, long index);

/// Random-substream purposes hanging off a trial seed. Each purpose gets an
/// independent SplitMix64 stream via derive_seed(trial_seed, purpose), so
/// changing the satellite population of one group never perturbs another.
enum class StreamPurpose : std::uint64_t {
  CommShell = 1,
  NavShell = 2,
  SensingShell = 3,
  GpsShell = 4,
  Vehicles = 5,
  Fading = 6,
};

/// One Monte Carlo snapshot of the scenario under the given integration
/// level: sample the constellation(s) and vehicles, associate and evaluate
/// communication, solve navigation per vehicle, evaluate the deterministic
/// sensing chain. Identical arguments give bit-identical results.
TrialMetrics run_trial(IntegrationLevel level, const ScenarioConfig& config,
                       std::uint64_t seed,
                       const MetricSelection& selection = {});

/// Runs `trials` paired trials for each requested level and aggregates.
/// `threads` <= 1 runs serially; higher values split trials across worker
/// threads with identical results (each trial is seeded independently).
MetricsReport run_experiment(std::span<const IntegrationLevel> levels,
                             const ScenarioConfig& config, long trials,
                             std::uint64_t master_seed, int threads = 1,
                             const MetricSelection& selection = {});

}  // namespace cnr

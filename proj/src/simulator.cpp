#include "cnrsim/simulator.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "cnrsim/config.hpp"
#include "cnrsim/errors.hpp"
#include "cnrsim/linkbudget.hpp"
#include "cnrsim/navigation.hpp"
#include "cnrsim/sensing.hpp"

namespace cnr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRadPerDeg = std::numbers::pi / 180.0;

SplitMix64 stream(std::uint64_t trial_seed, StreamPurpose purpose) {
  return SplitMix64(
      derive_seed(trial_seed, static_cast<std::uint64_t>(purpose)));
}

/// Prefilter margin: satellites serving a polar cap of half-angle `cap` above
/// mask `mask_deg` all lie within cap + visibility half-angle of the pole.
/// The epsilon guards the two cosine evaluations at the boundary.
double prefilter_angle_rad(double cap_half_angle_rad, double mask_deg,
                           double altitude_km, const EarthModel& earth) {
  return cap_half_angle_rad +
         visibility_cap_half_angle_deg(mask_deg, altitude_km, earth) *
             kRadPerDeg +
         1e-9;
}

void evaluate_comm(IntegrationLevel /*level*/, const ScenarioConfig& config,
                   const RegimeResources& regime, const EarthModel& earth,
                   std::span<const EcefPoint> vehicles,
                   double cap_half_angle_rad, std::uint64_t seed,
                   TrialMetrics& out) {
  const long count = regime.comm.satellite_count;
  SplitMix64 shell_rng = stream(seed, StreamPurpose::CommShell);
  Shell shell;
  shell.altitude_km = config.altitude_km;
  if (count > 0) {
    shell = sample_uniform_sphere(static_cast<std::size_t>(count),
                                  earth.radius_km + config.altitude_km,
                                  shell_rng, earth);
  }

  // One Rayleigh power coefficient per vehicle, drawn for every vehicle in
  // index order regardless of coverage so the fading stream stays aligned
  // across integration levels and satellite counts.
  SplitMix64 fading_rng = stream(seed, StreamPurpose::Fading);
  std::vector<double> fading(vehicles.size());
  for (double& f : fading) {
    f = fading_rng.next_exponential(1.0);
  }

  std::vector<std::uint32_t> candidates;
  if (count > 0) {
    candidates = shell_indices_near_pole(
        shell,
        prefilter_angle_rad(cap_half_angle_rad,
                            config.comm_elevation_mask_deg, config.altitude_km,
                            earth));
  }
  const AssociationMap assoc =
      associate_and_allocate(vehicles, shell, config.comm_elevation_mask_deg,
                             regime, candidates);

  const PathLossModel path_loss{config.path_loss_offset_db,
                                config.path_loss_slope_db_per_decade};
  LinkBudget budget;
  budget.tx_power_w = config.comm_tx_power_w;
  budget.combined_gain_db = config.combined_gain_db;
  budget.noise_psd_dbm_hz = config.noise_psd_dbm_hz;
  budget.noise_figure_db = config.noise_figure_db;
  const double rate = config.rate_threshold_bps();

  double outage_draws = 0.0;
  double outage_closed = 0.0;
  double capacity_sum = 0.0;
  for (std::size_t v = 0; v < vehicles.size(); ++v) {
    const Association& a = assoc.vehicles[v];
    if (a.satellite_index < 0) {
      outage_draws += 1.0;
      outage_closed += 1.0;
      continue;  // no coverage: capacity contributes 0
    }
    budget.bandwidth_hz = a.bandwidth_share_hz;
    budget.distance_km = a.slant_range_km;
    const double snr = mean_snr_linear(budget, path_loss);
    outage_closed += outage_probability(snr, a.bandwidth_share_hz, rate);
    // Instantaneous rate below threshold <=> faded SNR below 2^(R/B) - 1.
    const double faded = snr * fading[v];
    if (faded < std::exp2(rate / a.bandwidth_share_hz) - 1.0) {
      outage_draws += 1.0;
    }
    capacity_sum += ergodic_capacity_bps(snr, a.bandwidth_share_hz);
  }
  const double n = static_cast<double>(vehicles.size());
  out.outage_probability = outage_draws / n;
  out.outage_closed_form = outage_closed / n;
  out.ergodic_capacity_bps = capacity_sum / n;
}

void evaluate_nav(const ScenarioConfig& config, const RegimeResources& regime,
                  const EarthModel& earth,
                  std::span<const EcefPoint> vehicles,
                  double cap_half_angle_rad, std::uint64_t seed,
                  TrialMetrics& out) {
  const long count = regime.nav.satellite_count;
  SplitMix64 shell_rng = stream(seed, StreamPurpose::NavShell);
  Shell shell;
  shell.altitude_km = config.altitude_km;
  if (count > 0) {
    shell = sample_uniform_sphere(static_cast<std::size_t>(count),
                                  earth.radius_km + config.altitude_km,
                                  shell_rng, earth);
  }
  Shell gps;
  const bool has_gps = config.gps_enabled && config.gps_satellites > 0;
  if (has_gps) {
    SplitMix64 gps_rng = stream(seed, StreamPurpose::GpsShell);
    gps = gps_shell(config.gps_config(), earth, gps_rng);
  }

  const RangingModel model = config.ranging_model();
  const double mask = config.nav_elevation_mask_deg;
  const double sin_mask = std::sin(mask * kRadPerDeg);
  const double nav_bw_hz = regime.nav.bandwidth_hz;

  std::vector<std::uint32_t> nav_candidates;
  if (count > 0) {
    nav_candidates = shell_indices_near_pole(
        shell, prefilter_angle_rad(cap_half_angle_rad, mask,
                                   config.altitude_km, earth));
  }
  std::vector<std::uint32_t> gps_candidates;
  if (has_gps) {
    gps_candidates = shell_indices_near_pole(
        gps, prefilter_angle_rad(cap_half_angle_rad, mask,
                                 config.gps_altitude_km, earth));
  }

  double pos_sum = 0.0;
  double time_sum = 0.0;
  long available = 0;
  std::vector<AnchorRow> rows;
  rows.reserve(64);
  for (const EcefPoint& user : vehicles) {
    rows.clear();
    if (has_gps) {
      gather_anchor_rows(user, gps, gps_candidates, sin_mask,
                         model.reference_bandwidth_hz, model, rows);
    }
    if (count > 0) {
      gather_anchor_rows(user, shell, nav_candidates, sin_mask, nav_bw_hz,
                         model, rows);
    }
    if (rows.size() < 4) {
      continue;  // unavailable: fewer anchors than unknowns
    }
    try {
      const NavSolutionError sol = solution_error_from_rows(rows, earth);
      pos_sum += sol.positioning_error_m;
      time_sum += sol.timing_error_s;
      ++available;
    } catch (const singular_geometry_error&) {
      // counted as unavailable
    }
  }
  const double n = static_cast<double>(vehicles.size());
  out.nav_availability = static_cast<double>(available) / n;
  if (available > 0) {
    out.positioning_error_m = pos_sum / static_cast<double>(available);
    out.timing_error_s = time_sum / static_cast<double>(available);
  }
}

void evaluate_sensing(IntegrationLevel level, const ScenarioConfig& config,
                      const RegimeResources& regime, const EarthModel& earth,
                      TrialMetrics& out) {
  if (regime.sensing.satellite_count < 1) {
    return;  // no sensors: sensing metrics stay unavailable
  }
  // Fusion needs co-located functionalities, so it applies only at the
  // integrated levels; Traditional satellites observe alone.
  const int fusion = (level == IntegrationLevel::Traditional)
                         ? 1
                         : static_cast<int>(config.sar_fusion_factor);
  out.range_resolution_m =
      range_resolution_m(regime.sensing.bandwidth_hz,
                         config.sar_view_angle_deg, fusion,
                         config.speed_of_light_m_s);
  const int revisit_fusion = config.fusion_halves_revisit ? fusion : 1;
  const double revisit =
      revisit_time_s(regime.sensing.satellite_count,
                     config.sar_swath_width_km, config.altitude_km, earth,
                     revisit_fusion);
  const double download =
      download_time_s(config.sensing_data_gbits * 1e9,
                      config.sensing_spectral_efficiency_bps_hz,
                      regime.sensing.bandwidth_hz);
  out.aoi_s = aoi_s(revisit, download);
}

/// Two-pass aggregation of one metric across trials; NaN trials are the
/// "metric unavailable" signal and are excluded from n.
MetricStats aggregate(std::span<const TrialMetrics> trials,
                      double TrialMetrics::* member) {
  MetricStats stats;
  double sum = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  for (const TrialMetrics& t : trials) {
    const double v = t.*member;
    if (std::isnan(v)) continue;
    sum += v;
    min = std::min(min, v);
    max = std::max(max, v);
    ++stats.n;
  }
  if (stats.n == 0) {
    stats.mean = kNaN;
    stats.ci_low = kNaN;
    stats.ci_high = kNaN;
    return stats;
  }
  stats.mean = sum / static_cast<double>(stats.n);
  stats.deterministic = (min == max);
  if (stats.n > 1 && !stats.deterministic) {
    double ss = 0.0;
    for (const TrialMetrics& t : trials) {
      const double v = t.*member;
      if (std::isnan(v)) continue;
      const double d = v - stats.mean;
      ss += d * d;
    }
    const double sample_var = ss / static_cast<double>(stats.n - 1);
    stats.stderr_mean =
        std::sqrt(sample_var / static_cast<double>(stats.n));
  }
  stats.ci_low = stats.mean - 1.96 * stats.stderr_mean;
  stats.ci_high = stats.mean + 1.96 * stats.stderr_mean;
  return stats;
}

constexpr std::array<std::string_view, 7> kMetricNames = {
    "outage_probability", "ergodic_capacity_bps", "positioning_error_m",
    "timing_error_s",     "nav_availability",     "range_resolution_m",
    "aoi_s"};

constexpr std::array<double TrialMetrics::*, 7> kMetricMembers = {
    &TrialMetrics::outage_probability,
    &TrialMetrics::ergodic_capacity_bps,
    &TrialMetrics::positioning_error_m,
    &TrialMetrics::timing_error_s,
    &TrialMetrics::nav_availability,
    &TrialMetrics::range_resolution_m,
    &TrialMetrics::aoi_s};

}  // namespace

std::span<const std::string_view> metric_names() { return kMetricNames; }

std::uint64_t trial_seed(std::uint64_t master_seed, long index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

TrialMetrics run_trial(IntegrationLevel level, const ScenarioConfig& config,
                       std::uint64_t seed, const MetricSelection& selection) {
  const EarthModel earth = config.earth();
  const RegimeResources regime = build_regime(level, config);
  const double cap_angle = cap_half_angle_rad(config.cap_area_km2, earth);

  TrialMetrics metrics;
  metrics.outage_probability = kNaN;
  metrics.outage_closed_form = kNaN;
  metrics.ergodic_capacity_bps = kNaN;
  metrics.positioning_error_m = kNaN;
  metrics.timing_error_s = kNaN;
  metrics.nav_availability = kNaN;
  metrics.range_resolution_m = kNaN;
  metrics.aoi_s = kNaN;

  // The vehicle snapshot is shared by the communication and navigation
  // evaluations and must not depend on which of them run.
  SplitMix64 vehicle_rng = stream(seed, StreamPurpose::Vehicles);
  const std::vector<EcefPoint> vehicles =
      sample_cap_users(static_cast<std::size_t>(config.vehicle_count),
                       config.cap_area_km2, earth, vehicle_rng);

  if (selection.comm) {
    evaluate_comm(level, config, regime, earth, vehicles, cap_angle, seed,
                  metrics);
  }
  if (selection.nav) {
    evaluate_nav(config, regime, earth, vehicles, cap_angle, seed, metrics);
  }
  if (selection.sensing) {
    evaluate_sensing(level, config, regime, earth, metrics);
  }
  return metrics;
}

MetricsReport run_experiment(std::span<const IntegrationLevel> levels,
                             const ScenarioConfig& config, long trials,
                             std::uint64_t master_seed, int threads,
                             const MetricSelection& selection) {
  if (levels.empty()) {
    throw invalid_parameter_error("run_experiment: need at least one level");
  }
  if (trials < 1) {
    throw invalid_parameter_error("run_experiment: trials must be >= 1");
  }
  validate_config(config);

  // One result slot per (level, trial): workers write disjoint slots, so the
  // aggregate below is identical for every thread count.
  std::vector<std::vector<TrialMetrics>> results(levels.size());
  for (auto& r : results) {
    r.resize(static_cast<std::size_t>(trials));
  }
  const long jobs = static_cast<long>(levels.size()) * trials;
  const auto run_job = [&](long flat) {
    const std::size_t level_index =
        static_cast<std::size_t>(flat / trials);
    const long trial_index = flat % trials;
    results[level_index][static_cast<std::size_t>(trial_index)] =
        run_trial(levels[level_index], config,
                  trial_seed(master_seed, trial_index), selection);
  };

  const int workers = std::min<long>(std::max(threads, 1), jobs);
  if (workers <= 1) {
    for (long flat = 0; flat < jobs; ++flat) {
      run_job(flat);
    }
  } else {
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long flat = next.fetch_add(1);
             flat < jobs && !failed.load(std::memory_order_relaxed);
             flat = next.fetch_add(1)) {
          try {
            run_job(flat);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) {
              first_error = std::current_exception();
            }
          }
        }
      });
    }
    for (std::thread& t : pool) {
      t.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
  }

  MetricsReport report;
  report.trials = trials;
  report.master_seed = master_seed;
  report.config_fingerprint = config_fingerprint(config);
  report.levels.reserve(levels.size());
  for (std::size_t li = 0; li < levels.size(); ++li) {
    LevelReport level_report;
    level_report.level = levels[li];
    level_report.metrics.reserve(kMetricMembers.size());
    for (const auto member : kMetricMembers) {
      level_report.metrics.push_back(aggregate(results[li], member));
    }
    report.levels.push_back(std::move(level_report));
  }
  return report;
}

}  // namespace cnr

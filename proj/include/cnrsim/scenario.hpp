#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cnrsim/earth.hpp"
#include "cnrsim/geometry.hpp"
#include "cnrsim/navigation.hpp"

namespace cnr {

/// How tightly communication, navigation, and sensing share the space
/// segment. Traditional: three separate constellations, each with its own
/// spectrum. FunctionLevel: one merged constellation carries all three
/// functionalities, spectrum still split per function. SignalLevel: merged
/// constellation and each function can use the combined spectrum.
enum class IntegrationLevel { Traditional, FunctionLevel, SignalLevel };

/// Canonical lower-case name ("traditional", "function_level",
/// "signal_level") and its inverse. parse accepts the short aliases
/// "function" and "signal" too; throws invalid_parameter_error otherwise.
std::string level_name(IntegrationLevel level);
IntegrationLevel parse_level(const std::string& name);

/// Satellite count and usable bandwidth available to one functionality.
struct FunctionalResources {
  long satellite_count = 0;
  double bandwidth_hz = 0.0;
};

/// Per-functionality resources of one integration level.
struct RegimeResources {
  FunctionalResources comm;
  FunctionalResources nav;
  FunctionalResources sensing;
};

/// Every tunable of the study, with the published system parameters as
/// defaults. Field units are encoded in the names and match the config-file
/// keys one for one (see config.hpp for the file syntax).
struct ScenarioConfig {
  // Space segment.
  long comm_satellites = 4500;
  long nav_satellites = 250;
  long sensing_satellites = 250;
  double altitude_km = 500.0;

  // Spectrum.
  double comm_bandwidth_mhz = 250.0;
  double nav_bandwidth_mhz = 25.0;
  double sensing_bandwidth_mhz = 25.0;

  // Transmit powers (sensing power is carried for completeness; the
  // evaluated sensing metrics are geometry- and bandwidth-driven).
  double comm_tx_power_w = 20.0;
  double nav_tx_power_w = 20.0;
  double sensing_tx_power_w = 80.0;

  // Link model.
  double combined_gain_db = 55.0;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 7.0;
  double path_loss_offset_db = 110.0;
  double path_loss_slope_db_per_decade = 37.6;
  std::string small_scale_fading = "rayleigh";

  // Ground segment.
  long vehicle_count = 1400;
  double cap_area_km2 = 7.36e5;
  double comm_elevation_mask_deg = 60.0;
  double nav_elevation_mask_deg = 20.0;
  double rate_threshold_mbps = 0.7;

  // Safety-message traffic model (validation utility inputs).
  double vehicle_speed_max_kmh = 108.0;
  double report_spacing_m = 3.0;
  long perception_objects = 100;
  long perception_bytes_per_object = 80;
  long maneuver_bytes = 500;

  // Navigation model.
  double ranging_coeff_m_per_m = 2.28e-8;
  std::string ranging_bandwidth_scaling = "linear";  // off | linear | sqrt
  double nav_reference_bandwidth_mhz = 25.0;
  bool gps_enabled = true;
  long gps_satellites = 24;
  double gps_altitude_km = 20180.0;
  std::string gps_layout = "uniform";  // uniform | walker
  double gps_inclination_deg = 55.0;

  // Sensing model.
  double sar_view_angle_deg = 30.0;
  double sar_swath_width_km = 20.0;
  double sar_antenna_length_m = 10.0;
  long sar_fusion_factor = 2;  ///< Applied at the integrated levels.
  bool fusion_halves_revisit = false;
  double sensing_data_gbits = 360.0;
  double sensing_spectral_efficiency_bps_hz = 1.0;

  // Physical constants and reproducibility.
  double earth_radius_km = 6371.0;
  double earth_mu_km3_s2 = 398600.4418;
  double speed_of_light_m_s = 299792458.0;
  std::string rng_algorithm = "splitmix64";

  // Derived views.
  EarthModel earth() const;
  RangingModel ranging_model() const;
  GpsConfig gps_config() const;
  double rate_threshold_bps() const { return rate_threshold_mbps * 1e6; }
};

/// Resources each functionality gets under the given integration level.
/// Traditional reads the per-function fields as-is; FunctionLevel gives every
/// functionality the merged constellation with unchanged bandwidths;
/// SignalLevel additionally gives every functionality the summed bandwidth.
RegimeResources build_regime(IntegrationLevel level,
                             const ScenarioConfig& config);

/// Required safety-message rate of one vehicle: a status message of
/// (perception_objects * bytes_per_object + maneuver_bytes) bytes every
/// report_spacing_m metres of travel at speed_m_s.
double safety_message_rate_bps(double speed_m_s, double report_spacing_m,
                               long perception_objects, long bytes_per_object,
                               long maneuver_bytes);

/// One vehicle's serving assignment. satellite_index is -1 when no
/// communication satellite is visible above the mask (outage by no
/// coverage); bandwidth_share_hz is then 0.
struct Association {
  std::int32_t satellite_index = -1;
  double slant_range_km = 0.0;
  double bandwidth_share_hz = 0.0;
};

/// Serving assignment of every vehicle plus per-satellite load.
struct AssociationMap {
  std::vector<Association> vehicles;
  std::vector<std::uint32_t> load;  ///< Vehicles served, per shell index.
};

/// Associates every vehicle with its nearest visible communication satellite
/// (ties by lowest index) and splits each satellite's bandwidth equally among
/// its associated vehicles. `candidates` empty means "consider the whole
/// shell"; a non-empty span must be a superset of the satellites visible from
/// any vehicle and exists so trial loops can pre-filter the shell once.
AssociationMap associate_and_allocate(
    std::span<const EcefPoint> vehicles, const Shell& comm_shell,
    double mask_deg, const RegimeResources& regime,
    std::span<const std::uint32_t> candidates = {});

}  // namespace cnr

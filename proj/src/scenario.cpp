#include "cnrsim/scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cnrsim/errors.hpp"

namespace cnr {

std::string level_name(IntegrationLevel level) {
  switch (level) {
    case IntegrationLevel::Traditional:
      return "traditional";
    case IntegrationLevel::FunctionLevel:
      return "function_level";
    case IntegrationLevel::SignalLevel:
      return "signal_level";
  }
  throw invalid_parameter_error("level_name: unknown integration level");
}

IntegrationLevel parse_level(const std::string& name) {
  if (name == "traditional") return IntegrationLevel::Traditional;
  if (name == "function_level" || name == "function") {
    return IntegrationLevel::FunctionLevel;
  }
  if (name == "signal_level" || name == "signal") {
    return IntegrationLevel::SignalLevel;
  }
  throw invalid_parameter_error("unknown integration level '" + name +
                                "' (expected traditional, function_level or "
                                "signal_level)");
}

EarthModel ScenarioConfig::earth() const {
  return {earth_radius_km, earth_mu_km3_s2, speed_of_light_m_s};
}

RangingModel ScenarioConfig::ranging_model() const {
  RangingModel model;
  model.coeff_m_per_m = ranging_coeff_m_per_m;
  model.reference_bandwidth_hz = nav_reference_bandwidth_mhz * 1e6;
  if (ranging_bandwidth_scaling == "off") {
    model.scaling = BandwidthScaling::Off;
  } else if (ranging_bandwidth_scaling == "linear") {
    model.scaling = BandwidthScaling::Linear;
  } else if (ranging_bandwidth_scaling == "sqrt") {
    model.scaling = BandwidthScaling::SquareRoot;
  } else {
    throw invalid_parameter_error(
        "ranging_bandwidth_scaling must be off, linear or sqrt");
  }
  return model;
}

GpsConfig ScenarioConfig::gps_config() const {
  GpsConfig gps;
  gps.count = static_cast<std::size_t>(gps_satellites);
  gps.altitude_km = gps_altitude_km;
  gps.inclination_deg = gps_inclination_deg;
  if (gps_layout == "uniform") {
    gps.layout = GpsConfig::Layout::Uniform;
  } else if (gps_layout == "walker") {
    gps.layout = GpsConfig::Layout::Walker;
  } else {
    throw invalid_parameter_error("gps_layout must be uniform or walker");
  }
  return gps;
}

RegimeResources build_regime(IntegrationLevel level,
                             const ScenarioConfig& config) {
  const double comm_bw = config.comm_bandwidth_mhz * 1e6;
  const double nav_bw = config.nav_bandwidth_mhz * 1e6;
  const double sensing_bw = config.sensing_bandwidth_mhz * 1e6;
  const long total_sats = config.comm_satellites + config.nav_satellites +
                          config.sensing_satellites;
  const double total_bw = comm_bw + nav_bw + sensing_bw;

  RegimeResources r;
  switch (level) {
    case IntegrationLevel::Traditional:
      r.comm = {config.comm_satellites, comm_bw};
      r.nav = {config.nav_satellites, nav_bw};
      r.sensing = {config.sensing_satellites, sensing_bw};
      break;
    case IntegrationLevel::FunctionLevel:
      r.comm = {total_sats, comm_bw};
      r.nav = {total_sats, nav_bw};
      r.sensing = {total_sats, sensing_bw};
      break;
    case IntegrationLevel::SignalLevel:
      r.comm = {total_sats, total_bw};
      r.nav = {total_sats, total_bw};
      r.sensing = {total_sats, total_bw};
      break;
  }
  return r;
}

double safety_message_rate_bps(double speed_m_s, double report_spacing_m,
                               long perception_objects, long bytes_per_object,
                               long maneuver_bytes) {
  if (speed_m_s < 0.0) {
    throw invalid_parameter_error(
        "safety_message_rate_bps: speed must be >= 0");
  }
  if (!(report_spacing_m > 0.0)) {
    throw invalid_parameter_error(
        "safety_message_rate_bps: report spacing must be > 0");
  }
  if (perception_objects < 0 || bytes_per_object < 0 || maneuver_bytes < 0) {
    throw invalid_parameter_error(
        "safety_message_rate_bps: message sizes must be >= 0");
  }
  const double payload_bits =
      static_cast<double>(perception_objects * bytes_per_object +
                          maneuver_bytes) *
      8.0;
  // One message per report_spacing metres of travel. Evaluated as
  // bits * speed / spacing so that round decimal inputs give round outputs.
  return payload_bits * speed_m_s / report_spacing_m;
}

AssociationMap associate_and_allocate(
    std::span<const EcefPoint> vehicles, const Shell& comm_shell,
    double mask_deg, const RegimeResources& regime,
    std::span<const std::uint32_t> candidates) {
  if (!(mask_deg >= 0.0) || !(mask_deg <= 90.0)) {
    throw invalid_parameter_error(
        "associate_and_allocate: elevation mask must lie in [0, 90] degrees");
  }
  if (regime.comm.bandwidth_hz < 0.0) {
    throw invalid_parameter_error(
        "associate_and_allocate: bandwidth must be >= 0");
  }
  const double sin_mask = std::sin(mask_deg * std::numbers::pi / 180.0);

  AssociationMap map;
  map.vehicles.resize(vehicles.size());
  map.load.assign(comm_shell.count(), 0);

  for (std::size_t v = 0; v < vehicles.size(); ++v) {
    const EcefPoint& user = vehicles[v];
    const double ru = user.radius_km();
    double best_range = std::numeric_limits<double>::infinity();
    std::int32_t best_index = -1;
    const auto consider = [&](std::uint32_t i) {
      double range = 0.0;
      if (!satellite_in_view(user, comm_shell.points[i], sin_mask, ru, range)) {
        return;
      }
      // Ties go to the lowest index regardless of candidate order.
      if (range < best_range ||
          (range == best_range && static_cast<std::int32_t>(i) < best_index)) {
        best_range = range;
        best_index = static_cast<std::int32_t>(i);
      }
    };
    if (candidates.empty()) {
      for (std::uint32_t i = 0; i < comm_shell.count(); ++i) consider(i);
    } else {
      for (const std::uint32_t i : candidates) consider(i);
    }
    if (best_index >= 0) {
      map.vehicles[v].satellite_index = best_index;
      map.vehicles[v].slant_range_km = best_range;
      ++map.load[static_cast<std::size_t>(best_index)];
    }
  }
  for (Association& a : map.vehicles) {
    if (a.satellite_index >= 0) {
      a.bandwidth_share_hz =
          regime.comm.bandwidth_hz /
          static_cast<double>(map.load[static_cast<std::size_t>(
              a.satellite_index)]);
    }
  }
  return map;
}

}  // namespace cnr

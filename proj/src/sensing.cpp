#include "cnrsim/sensing.hpp"

#include <cmath>
#include <numbers>

#include "cnrsim/errors.hpp"

namespace cnr {

double range_resolution_m(double bandwidth_hz, double view_angle_deg,
                          int fusion_factor, double speed_of_light_m_s) {
  if (!(bandwidth_hz > 0.0)) {
    throw invalid_parameter_error("range_resolution_m: bandwidth must be > 0");
  }
  if (!(view_angle_deg > 0.0) || !(view_angle_deg <= 90.0)) {
    throw invalid_parameter_error(
        "range_resolution_m: view angle must lie in (0, 90] degrees");
  }
  if (fusion_factor < 1) {
    throw invalid_parameter_error(
        "range_resolution_m: fusion factor must be >= 1");
  }
  const double s = std::sin(view_angle_deg * std::numbers::pi / 180.0);
  return speed_of_light_m_s / (2.0 * bandwidth_hz * s) /
         static_cast<double>(fusion_factor);
}

double azimuth_resolution_m(double antenna_length_m) {
  if (!(antenna_length_m > 0.0)) {
    throw invalid_parameter_error(
        "azimuth_resolution_m: antenna length must be > 0");
  }
  return antenna_length_m / 2.0;
}

double ground_track_speed_km_s(double altitude_km, const EarthModel& earth) {
  if (!(altitude_km > 0.0)) {
    throw invalid_parameter_error(
        "ground_track_speed_km_s: altitude must be > 0");
  }
  const double r = earth.radius_km + altitude_km;
  return std::sqrt(earth.mu_km3_s2 / r) * earth.radius_km / r;
}

double revisit_time_s(long sat_count, double swath_width_km,
                      double altitude_km, const EarthModel& earth,
                      int fusion_factor) {
  if (sat_count < 1) {
    throw invalid_parameter_error("revisit_time_s: need at least 1 satellite");
  }
  if (!(swath_width_km > 0.0)) {
    throw invalid_parameter_error("revisit_time_s: swath width must be > 0");
  }
  if (fusion_factor < 1) {
    throw invalid_parameter_error(
        "revisit_time_s: fusion factor must be >= 1");
  }
  // Each effective satellite sweeps swath * ground-track-speed of area per
  // second; the mean revisit interval is the time the whole constellation
  // needs to sweep the full sphere once.
  const double n_eff =
      static_cast<double>(sat_count) / static_cast<double>(fusion_factor);
  return earth.surface_area_km2() /
         (n_eff * swath_width_km * ground_track_speed_km_s(altitude_km, earth));
}

double download_time_s(double data_size_bits, double spectral_efficiency_bps_hz,
                       double bandwidth_hz) {
  if (data_size_bits < 0.0) {
    throw invalid_parameter_error("download_time_s: data size must be >= 0");
  }
  if (!(spectral_efficiency_bps_hz > 0.0)) {
    throw invalid_parameter_error(
        "download_time_s: spectral efficiency must be > 0");
  }
  if (!(bandwidth_hz > 0.0)) {
    throw invalid_parameter_error("download_time_s: bandwidth must be > 0");
  }
  return data_size_bits / (spectral_efficiency_bps_hz * bandwidth_hz);
}

double aoi_s(double revisit_time_s, double download_time_s) {
  if (revisit_time_s < 0.0 || download_time_s < 0.0) {
    throw invalid_parameter_error("aoi_s: components must be >= 0");
  }
  return revisit_time_s + download_time_s;
}

}  // namespace cnr

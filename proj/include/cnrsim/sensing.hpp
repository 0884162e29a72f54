#pragma once

#include "cnrsim/earth.hpp"

namespace cnr {

/// Synthetic-aperture-radar configuration shared by the sensing operations.
struct SarConfig {
  double bandwidth_hz = 25e6;
  double view_angle_deg = 30.0;  ///< Satellite-centred angle off nadir.
  double swath_width_km = 20.0;
  double antenna_length_m = 10.0;
  int fusion_factor = 1;  ///< Distinct satellites fused per observation.
};

/// The five sensing figures of merit for one regime.
struct SensingMetrics {
  double range_resolution_m = 0.0;
  double azimuth_resolution_m = 0.0;
  double revisit_time_s = 0.0;
  double download_time_s = 0.0;
  double aoi_s = 0.0;
};

/// Cross-track resolution c / (2 B sin(view angle)), improved by fusing
/// `fusion_factor` satellites' looks. The view angle must lie in (0, 90].
double range_resolution_m(double bandwidth_hz, double view_angle_deg,
                          int fusion_factor,
                          double speed_of_light_m_s = 299792458.0);

/// Along-track resolution: half the antenna length.
double azimuth_resolution_m(double antenna_length_m);

/// Ground-track speed of a circular orbit at the given altitude:
/// sqrt(mu / (Re + h)) * Re / (Re + h), in km/s.
double ground_track_speed_km_s(double altitude_km, const EarthModel& earth);

/// Mean interval until some satellite of the constellation re-observes a
/// ground point: Earth surface area / (effective satellite count * swath
/// width * ground-track speed). Fused observation needs `fusion_factor`
/// satellites per look, dividing the effective count.
double revisit_time_s(long sat_count, double swath_width_km,
                      double altitude_km, const EarthModel& earth,
                      int fusion_factor);

/// Time to deliver one observation batch: bits / (efficiency * bandwidth).
/// Zero data downloads in zero time.
double download_time_s(double data_size_bits, double spectral_efficiency_bps_hz,
                       double bandwidth_hz);

/// Age of information of the sensing product: revisit plus download time.
double aoi_s(double revisit_time_s, double download_time_s);

}  // namespace cnr

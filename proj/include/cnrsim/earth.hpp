#pragma once

#include <numbers>

namespace cnr {

/// Physical constants of the central body. A spherical Earth is assumed
/// throughout; the defaults are the mean radius, the WGS-84 gravitational
/// parameter, and the exact SI speed of light.
struct EarthModel {
  double radius_km = 6371.0;
  double mu_km3_s2 = 398600.4418;
  double speed_of_light_m_s = 299792458.0;

  /// Total surface area, 4*pi*R^2.
  double surface_area_km2() const noexcept {
    return 4.0 * std::numbers::pi * radius_km * radius_km;
  }
};

}  // namespace cnr

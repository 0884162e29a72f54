#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cnrsim/earth.hpp"
#include "cnrsim/rng.hpp"

namespace cnr {

/// Cartesian Earth-centred position in kilometres.
struct EcefPoint {
  double x_km = 0.0;
  double y_km = 0.0;
  double z_km = 0.0;

  double radius_km() const noexcept;
};

/// A set of satellites at a common altitude. Positions are stored explicitly
/// so that visibility checks never re-derive them.
struct Shell {
  double altitude_km = 0.0;
  std::vector<EcefPoint> points;

  std::size_t count() const noexcept { return points.size(); }
};

/// One visible satellite as seen from a user, produced by
/// visible_satellites(). Sorted ascending by slant range (ties by index).
struct VisibleSatellite {
  std::size_t index = 0;
  double slant_range_km = 0.0;
  double elevation_deg = 0.0;
};

/// GPS-like reference constellation parameters.
struct GpsConfig {
  enum class Layout { Uniform, Walker };

  std::size_t count = 24;
  double altitude_km = 20180.0;
  Layout layout = Layout::Uniform;
  double inclination_deg = 55.0;  ///< Walker layout only.
};

/// Samples `count` points independently and uniformly on the sphere of the
/// given radius (Archimedes' method: z uniform in [-r, r], longitude uniform).
/// The resulting Shell records altitude = radius - earth radius.
Shell sample_uniform_sphere(std::size_t count, double radius_km,
                            SplitMix64& rng, const EarthModel& earth = {});

/// Samples `count` user positions uniformly on the polar spherical cap of the
/// given area, centred on the +z axis of the Earth's surface.
std::vector<EcefPoint> sample_cap_users(std::size_t count, double cap_area_km2,
                                        const EarthModel& earth,
                                        SplitMix64& rng);

/// Elevation of `sat` above the local horizon of `user` (user on the Earth's
/// surface), in degrees. 90 at zenith, 0 on the horizon, negative below it.
/// Throws degenerate_geometry_error if the two points coincide.
double elevation_angle(const EcefPoint& user, const EcefPoint& sat);

/// Euclidean distance in km. Throws degenerate_geometry_error if zero.
double slant_range(const EcefPoint& user, const EcefPoint& sat);

/// All shell members with elevation >= min_elevation_deg as seen from `user`,
/// sorted ascending by slant range (ties broken by index). The mask must lie
/// in [0, 90] degrees.
std::vector<VisibleSatellite> visible_satellites(const EcefPoint& user,
                                                 const Shell& shell,
                                                 double min_elevation_deg);

/// Builds the reference navigation constellation. Uniform layout draws the
/// positions like sample_uniform_sphere; Walker layout places count/6 slots
/// on 6 equally spaced planes at the configured inclination (count must be a
/// positive multiple of 6) and consumes no randomness.
Shell gps_shell(const GpsConfig& config, const EarthModel& earth,
                SplitMix64& rng);

/// Half-angle (degrees, measured from the Earth's centre) of the cap of
/// ground points that see a satellite at `altitude_km` above elevation mask
/// `min_elevation_deg`: 90 - E - asin(cos E * Re / (Re + h)).
double visibility_cap_half_angle_deg(double min_elevation_deg,
                                     double altitude_km,
                                     const EarthModel& earth = {});

/// Half-angle (radians, from the Earth's centre) of a spherical cap of the
/// given area on the Earth's surface.
double cap_half_angle_rad(double cap_area_km2, const EarthModel& earth = {});

// --- low-level visibility primitive -----------------------------------------
//
// Every visibility decision in the library funnels through this predicate so
// that the full-scan operations and the prefiltered hot paths cannot drift
// apart. The test avoids sqrt/asin: with u the user position (|u| = user
// radius) and d = sat - user,
//   elevation >= mask  <=>  u.d >= sin(mask) * |u| * |d|
// which for sin(mask) >= 0 is equivalent to u.d >= 0 and
// (u.d)^2 >= sin^2(mask) * |u|^2 * |d|^2.

/// Returns true and fills `slant_range_km` when `sat` is at or above the
/// elevation mask whose sine is `sin_min_elevation` (must be >= 0).
inline bool satellite_in_view(const EcefPoint& user, const EcefPoint& sat,
                              double sin_min_elevation, double user_radius_km,
                              double& slant_range_km) noexcept {
  const double dx = sat.x_km - user.x_km;
  const double dy = sat.y_km - user.y_km;
  const double dz = sat.z_km - user.z_km;
  const double d2 = dx * dx + dy * dy + dz * dz;
  const double ud = user.x_km * dx + user.y_km * dy + user.z_km * dz;
  if (ud < 0.0) return false;
  const double s = sin_min_elevation * user_radius_km;
  if (ud * ud < s * s * d2) return false;
  if (d2 <= 0.0) return false;  // coincident points are never "in view"
  slant_range_km = std::sqrt(d2);
  return true;
}

/// Indices of shell members whose polar angle (from +z) is at most
/// `max_polar_angle_rad`. Used as a superset prefilter when all users sit in
/// a polar cap: a satellite visible from any point of a cap of half-angle c
/// lies within c + visibility_cap_half_angle of the pole.
std::vector<std::uint32_t> shell_indices_near_pole(const Shell& shell,
                                                   double max_polar_angle_rad);

}  // namespace cnr

#include "cnrsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cnrsim/errors.hpp"

namespace cnr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRadPerDeg = kPi / 180.0;

/// One point uniform on the sphere of radius r: z = r(2u1 - 1) (Archimedes'
/// hat-box theorem), longitude = 2*pi*u2. Draw order is part of the
/// reproducibility contract: z first, then longitude.
EcefPoint sphere_point(double radius_km, SplitMix64& rng) {
  const double t = 2.0 * rng.next_double() - 1.0;  // cos(polar angle)
  const double phi = 2.0 * kPi * rng.next_double();
  const double rho = radius_km * std::sqrt(std::max(0.0, 1.0 - t * t));
  return {rho * std::cos(phi), rho * std::sin(phi), radius_km * t};
}

}  // namespace

double EcefPoint::radius_km() const noexcept {
  return std::sqrt(x_km * x_km + y_km * y_km + z_km * z_km);
}

Shell sample_uniform_sphere(std::size_t count, double radius_km,
                            SplitMix64& rng, const EarthModel& earth) {
  if (count == 0) {
    throw invalid_parameter_error("sample_uniform_sphere: count must be >= 1");
  }
  if (!(radius_km > 0.0)) {
    throw invalid_parameter_error("sample_uniform_sphere: radius must be > 0");
  }
  Shell shell;
  shell.altitude_km = radius_km - earth.radius_km;
  shell.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    shell.points.push_back(sphere_point(radius_km, rng));
  }
  return shell;
}

std::vector<EcefPoint> sample_cap_users(std::size_t count, double cap_area_km2,
                                        const EarthModel& earth,
                                        SplitMix64& rng) {
  if (count == 0) {
    throw invalid_parameter_error("sample_cap_users: count must be >= 1");
  }
  if (!(cap_area_km2 > 0.0) || cap_area_km2 > earth.surface_area_km2()) {
    throw invalid_parameter_error(
        "sample_cap_users: cap area must be in (0, total surface area]");
  }
  // Cap area A = 2*pi*R^2*(1 - cos c). Uniformity on the cap means cos(polar
  // angle) uniform in [cos c, 1]; the same hat-box argument as the full
  // sphere, restricted to the cap.
  const double r = earth.radius_km;
  const double cos_c = 1.0 - cap_area_km2 / (2.0 * kPi * r * r);
  std::vector<EcefPoint> users;
  users.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = cos_c + (1.0 - cos_c) * rng.next_double();
    const double phi = 2.0 * kPi * rng.next_double();
    const double rho = r * std::sqrt(std::max(0.0, 1.0 - t * t));
    users.push_back({rho * std::cos(phi), rho * std::sin(phi), r * t});
  }
  return users;
}

double elevation_angle(const EcefPoint& user, const EcefPoint& sat) {
  const double dx = sat.x_km - user.x_km;
  const double dy = sat.y_km - user.y_km;
  const double dz = sat.z_km - user.z_km;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double ru = user.radius_km();
  if (d <= 0.0) {
    throw degenerate_geometry_error(
        "elevation_angle: satellite coincides with the user");
  }
  if (ru <= 0.0) {
    throw degenerate_geometry_error(
        "elevation_angle: user at the Earth's centre");
  }
  // sin(elevation) = cos(angle between the zenith direction and the line of
  // sight) = (u . d) / (|u| |d|).
  const double s =
      (user.x_km * dx + user.y_km * dy + user.z_km * dz) / (ru * d);
  return std::asin(std::clamp(s, -1.0, 1.0)) * kDegPerRad;
}

double slant_range(const EcefPoint& user, const EcefPoint& sat) {
  const double dx = sat.x_km - user.x_km;
  const double dy = sat.y_km - user.y_km;
  const double dz = sat.z_km - user.z_km;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (d <= 0.0) {
    throw degenerate_geometry_error("slant_range: points coincide");
  }
  return d;
}

std::vector<VisibleSatellite> visible_satellites(const EcefPoint& user,
                                                 const Shell& shell,
                                                 double min_elevation_deg) {
  if (!(min_elevation_deg >= 0.0) || !(min_elevation_deg <= 90.0)) {
    throw invalid_parameter_error(
        "visible_satellites: elevation mask must lie in [0, 90] degrees");
  }
  const double sin_mask = std::sin(min_elevation_deg * kRadPerDeg);
  const double ru = user.radius_km();
  std::vector<VisibleSatellite> out;
  for (std::size_t i = 0; i < shell.points.size(); ++i) {
    double range = 0.0;
    if (satellite_in_view(user, shell.points[i], sin_mask, ru, range)) {
      out.push_back({i, range, elevation_angle(user, shell.points[i])});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const VisibleSatellite& a, const VisibleSatellite& b) {
              if (a.slant_range_km != b.slant_range_km) {
                return a.slant_range_km < b.slant_range_km;
              }
              return a.index < b.index;
            });
  return out;
}

Shell gps_shell(const GpsConfig& config, const EarthModel& earth,
                SplitMix64& rng) {
  if (config.count == 0) {
    throw invalid_parameter_error("gps_shell: count must be >= 1");
  }
  if (!(config.altitude_km > 0.0)) {
    throw invalid_parameter_error("gps_shell: altitude must be > 0");
  }
  const double r = earth.radius_km + config.altitude_km;
  if (config.layout == GpsConfig::Layout::Uniform) {
    return sample_uniform_sphere(config.count, r, rng, earth);
  }
  // Walker-style layout: 6 equally spaced orbital planes, count/6 slots per
  // plane, consecutive planes phase-shifted by a quarter slot.
  if (config.count % 6 != 0) {
    throw invalid_parameter_error(
        "gps_shell: walker layout needs a count divisible by 6");
  }
  const std::size_t slots = config.count / 6;
  const double inc = config.inclination_deg * kRadPerDeg;
  const double ci = std::cos(inc);
  const double si = std::sin(inc);
  Shell shell;
  shell.altitude_km = config.altitude_km;
  shell.points.reserve(config.count);
  for (std::size_t p = 0; p < 6; ++p) {
    const double raan = static_cast<double>(p) * (2.0 * kPi / 6.0);
    const double co = std::cos(raan);
    const double so = std::sin(raan);
    for (std::size_t s = 0; s < slots; ++s) {
      const double u = 2.0 * kPi *
                       (static_cast<double>(s) / static_cast<double>(slots) +
                        static_cast<double>(p) / (4.0 * static_cast<double>(slots)));
      const double cu = std::cos(u);
      const double su = std::sin(u);
      shell.points.push_back({r * (co * cu - so * ci * su),
                              r * (so * cu + co * ci * su), r * si * su});
    }
  }
  return shell;
}

double visibility_cap_half_angle_deg(double min_elevation_deg,
                                     double altitude_km,
                                     const EarthModel& earth) {
  if (!(min_elevation_deg >= 0.0) || !(min_elevation_deg <= 90.0)) {
    throw invalid_parameter_error(
        "visibility_cap_half_angle_deg: mask must lie in [0, 90] degrees");
  }
  if (!(altitude_km > 0.0)) {
    throw invalid_parameter_error(
        "visibility_cap_half_angle_deg: altitude must be > 0");
  }
  const double e = min_elevation_deg * kRadPerDeg;
  const double ratio = earth.radius_km / (earth.radius_km + altitude_km);
  return 90.0 - min_elevation_deg -
         std::asin(std::cos(e) * ratio) * kDegPerRad;
}

double cap_half_angle_rad(double cap_area_km2, const EarthModel& earth) {
  if (!(cap_area_km2 > 0.0) || cap_area_km2 > earth.surface_area_km2()) {
    throw invalid_parameter_error(
        "cap_half_angle_rad: area must be in (0, total surface area]");
  }
  const double cos_c =
      1.0 - cap_area_km2 / (2.0 * kPi * earth.radius_km * earth.radius_km);
  return std::acos(std::clamp(cos_c, -1.0, 1.0));
}

std::vector<std::uint32_t> shell_indices_near_pole(const Shell& shell,
                                                   double max_polar_angle_rad) {
  std::vector<std::uint32_t> out;
  if (max_polar_angle_rad >= kPi) {
    out.resize(shell.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<std::uint32_t>(i);
    }
    return out;
  }
  const double cos_max = std::cos(max_polar_angle_rad);
  for (std::size_t i = 0; i < shell.points.size(); ++i) {
    const EcefPoint& p = shell.points[i];
    // z >= cos(max) * |p|  <=>  polar angle <= max. Avoids a sqrt by
    // comparing z * |z| against cos^2 * r^2 only when signs allow; a plain
    // norm here is fine since this runs once per trial, not per vehicle.
    if (p.z_km >= cos_max * p.radius_km()) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out;
}

}  // namespace cnr

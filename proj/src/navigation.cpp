#include "cnrsim/navigation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "cnrsim/errors.hpp"

namespace cnr {

namespace {

constexpr double kMaxCondition = 1e12;

/// Shared core: accumulate A = H^T W H from rows, factor, gate on the
/// condition estimate, invert, and derive the two error figures.
NavSolutionError solve_rows(std::span<const AnchorRow> rows,
                            const EarthModel& earth) {
  if (rows.size() < 4) {
    throw insufficient_anchors_error(
        "solution_error: at least 4 anchors are required");
  }
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  for (const AnchorRow& r : rows) {
    const double w = r.weight;
    // Row h = [-ex, -ey, -ez, 1]; accumulate w * h h^T (upper triangle).
    a(0, 0) += w * r.ex * r.ex;
    a(0, 1) += w * r.ex * r.ey;
    a(0, 2) += w * r.ex * r.ez;
    a(0, 3) -= w * r.ex;
    a(1, 1) += w * r.ey * r.ey;
    a(1, 2) += w * r.ey * r.ez;
    a(1, 3) -= w * r.ey;
    a(2, 2) += w * r.ez * r.ez;
    a(2, 3) -= w * r.ez;
    a(3, 3) += w;
  }
  a(1, 0) = a(0, 1);
  a(2, 0) = a(0, 2);
  a(3, 0) = a(0, 3);
  a(2, 1) = a(1, 2);
  a(3, 1) = a(1, 3);
  a(3, 2) = a(2, 3);

  const Eigen::LDLT<Eigen::Matrix4d> ldlt(a);
  const double rcond = ldlt.rcond();
  if (ldlt.info() != Eigen::Success || !(rcond > 1.0 / kMaxCondition)) {
    throw singular_geometry_error(
        "solution_error: anchor geometry is singular or too ill-conditioned");
  }
  Eigen::Matrix4d c = ldlt.solve(Eigen::Matrix4d::Identity());
  // The inverse of a symmetric matrix is symmetric; enforce it exactly so the
  // reported covariance honours that invariant bit-for-bit.
  c = ((c + c.transpose()) * 0.5).eval();

  const double pos_var = c(0, 0) + c(1, 1) + c(2, 2);
  const double time_var = c(3, 3);
  if (!(pos_var > 0.0) || !(time_var > 0.0)) {
    throw singular_geometry_error(
        "solution_error: covariance is not positive definite");
  }
  NavSolutionError out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.covariance[i][j] = c(i, j);
    }
  }
  out.positioning_error_m = std::sqrt(pos_var);
  out.timing_error_s = std::sqrt(time_var) / earth.speed_of_light_m_s;
  return out;
}

}  // namespace

double ranging_sigma_m(double distance_km, double nav_bandwidth_hz,
                       const RangingModel& model) {
  if (!(distance_km > 0.0)) {
    throw invalid_parameter_error("ranging_sigma_m: distance must be > 0");
  }
  if (!(nav_bandwidth_hz > 0.0)) {
    throw invalid_parameter_error("ranging_sigma_m: bandwidth must be > 0");
  }
  if (!(model.coeff_m_per_m > 0.0) || !(model.reference_bandwidth_hz > 0.0)) {
    throw invalid_parameter_error(
        "ranging_sigma_m: model coefficients must be > 0");
  }
  double factor = 1.0;
  switch (model.scaling) {
    case BandwidthScaling::Off:
      break;
    case BandwidthScaling::Linear:
      factor = model.reference_bandwidth_hz / nav_bandwidth_hz;
      break;
    case BandwidthScaling::SquareRoot:
      factor = std::sqrt(model.reference_bandwidth_hz / nav_bandwidth_hz);
      break;
  }
  return model.coeff_m_per_m * (distance_km * 1e3) * factor;
}

std::vector<std::array<double, 4>> geometry_matrix(
    const EcefPoint& user, std::span<const Anchor> anchors) {
  if (anchors.size() < 4) {
    throw insufficient_anchors_error(
        "geometry_matrix: at least 4 anchors are required");
  }
  std::vector<std::array<double, 4>> h;
  h.reserve(anchors.size());
  for (const Anchor& anchor : anchors) {
    const double dx = anchor.position.x_km - user.x_km;
    const double dy = anchor.position.y_km - user.y_km;
    const double dz = anchor.position.z_km - user.z_km;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(d > 0.0)) {
      throw degenerate_geometry_error(
          "geometry_matrix: anchor coincides with the user");
    }
    h.push_back({-dx / d, -dy / d, -dz / d, 1.0});
  }
  return h;
}

NavSolutionError solution_error(const EcefPoint& user,
                                std::span<const Anchor> anchors,
                                const EarthModel& earth) {
  const auto h = geometry_matrix(user, anchors);  // validates the set
  std::vector<AnchorRow> rows;
  rows.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double sigma = anchors[i].ranging_sigma_m;
    if (!(sigma > 0.0)) {
      throw invalid_parameter_error(
          "solution_error: ranging sigma must be > 0");
    }
    rows.push_back(
        {-h[i][0], -h[i][1], -h[i][2], 1.0 / (sigma * sigma)});
  }
  return solve_rows(rows, earth);
}

NavSolutionError solution_error_from_rows(std::span<const AnchorRow> rows,
                                          const EarthModel& earth) {
  return solve_rows(rows, earth);
}

std::vector<Anchor> hybrid_anchor_set(const EcefPoint& user,
                                      const Shell& leo_nav_shell,
                                      const Shell* gps, double mask_deg,
                                      double nav_bandwidth_hz,
                                      const RangingModel& model) {
  if (!(mask_deg >= 0.0) || !(mask_deg <= 90.0)) {
    throw invalid_parameter_error(
        "hybrid_anchor_set: elevation mask must lie in [0, 90] degrees");
  }
  const double sin_mask = std::sin(mask_deg * std::numbers::pi / 180.0);
  const double ru = user.radius_km();
  std::vector<Anchor> anchors;
  if (gps != nullptr) {
    for (const EcefPoint& p : gps->points) {
      double range = 0.0;
      if (satellite_in_view(user, p, sin_mask, ru, range)) {
        anchors.push_back(
            {p, ranging_sigma_m(range, model.reference_bandwidth_hz, model)});
      }
    }
  }
  for (const EcefPoint& p : leo_nav_shell.points) {
    double range = 0.0;
    if (satellite_in_view(user, p, sin_mask, ru, range)) {
      anchors.push_back({p, ranging_sigma_m(range, nav_bandwidth_hz, model)});
    }
  }
  return anchors;
}

std::size_t gather_anchor_rows(const EcefPoint& user, const Shell& shell,
                               std::span<const std::uint32_t> candidates,
                               double sin_mask, double bandwidth_for_sigma_hz,
                               const RangingModel& model,
                               std::vector<AnchorRow>& out) {
  const double ru = user.radius_km();
  const std::size_t before = out.size();
  const auto add = [&](const EcefPoint& p) {
    double range = 0.0;
    if (satellite_in_view(user, p, sin_mask, ru, range)) {
      const double sigma =
          ranging_sigma_m(range, bandwidth_for_sigma_hz, model);
      const double inv_d = 1.0 / range;
      out.push_back({(p.x_km - user.x_km) * inv_d,
                     (p.y_km - user.y_km) * inv_d,
                     (p.z_km - user.z_km) * inv_d, 1.0 / (sigma * sigma)});
    }
  };
  if (candidates.empty()) {
    for (const EcefPoint& p : shell.points) add(p);
  } else {
    for (const std::uint32_t i : candidates) add(shell.points[i]);
  }
  return out.size() - before;
}

}  // namespace cnr

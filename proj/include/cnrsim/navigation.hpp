#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cnrsim/earth.hpp"
#include "cnrsim/geometry.hpp"

namespace cnr {

/// One ranging source: a satellite position plus the standard deviation of
/// its pseudorange measurement.
struct Anchor {
  EcefPoint position;
  double ranging_sigma_m = 1.0;
};

/// Output of the weighted-least-squares error analysis. The covariance is of
/// the estimate (x, y, z, c*dt), all in metres, so positioning_error_m is
/// sqrt of the position block trace and timing_error_s divides the clock
/// sigma by the speed of light.
struct NavSolutionError {
  double covariance[4][4] = {};
  double positioning_error_m = 0.0;
  double timing_error_s = 0.0;
};

/// How the ranging standard deviation scales with navigation bandwidth.
enum class BandwidthScaling { Off, Linear, SquareRoot };

/// Distance-proportional ranging-error model. The coefficient is metres of
/// standard deviation per metre of range at the reference bandwidth; wider
/// navigation bandwidth shrinks sigma per the selected scaling law.
struct RangingModel {
  double coeff_m_per_m = 2.28e-8;
  BandwidthScaling scaling = BandwidthScaling::Linear;
  double reference_bandwidth_hz = 25e6;
};

/// Ranging standard deviation in metres at the given range and navigation
/// bandwidth: coeff * d_m * f(reference_bw / bw), with f per the scaling law.
double ranging_sigma_m(double distance_km, double nav_bandwidth_hz,
                       const RangingModel& model);

/// Linearized measurement matrix: one row [-ex, -ey, -ez, 1] per anchor,
/// where e is the unit vector from the user to the anchor. Throws
/// insufficient_anchors_error for fewer than 4 anchors and
/// degenerate_geometry_error when an anchor coincides with the user.
std::vector<std::array<double, 4>> geometry_matrix(
    const EcefPoint& user, std::span<const Anchor> anchors);

/// Weighted-least-squares error of the four-unknown navigation solution:
/// covariance (H^T W H)^-1 with W = diag(1/sigma_i^2). Throws
/// singular_geometry_error when the normal matrix's condition estimate
/// exceeds 1e12 (coplanar or otherwise degenerate anchor geometry).
NavSolutionError solution_error(const EcefPoint& user,
                                std::span<const Anchor> anchors,
                                const EarthModel& earth = {});

/// Anchor set for hybrid positioning: all GPS satellites visible above the
/// mask (sigma pinned to the reference bandwidth), followed by all LEO
/// navigation satellites visible above the same mask (sigma at the scenario
/// navigation bandwidth). Order is GPS by index, then LEO by index. Pass
/// `gps = nullptr` to use the LEO shell alone.
std::vector<Anchor> hybrid_anchor_set(const EcefPoint& user,
                                      const Shell& leo_nav_shell,
                                      const Shell* gps, double mask_deg,
                                      double nav_bandwidth_hz,
                                      const RangingModel& model);

// --- hot-path building blocks ------------------------------------------------
//
// The Monte Carlo inner loop solves the same problem hundreds of millions of
// times; these entry points avoid re-deriving unit vectors and reallocating.
// They are exercised against the plain operations in the tests.

/// One precomputed row of the weighted problem: unit line-of-sight vector and
/// measurement weight 1/sigma^2.
struct AnchorRow {
  double ex, ey, ez;
  double weight;  // 1 / sigma^2, sigma in metres
};

/// Same covariance math as solution_error, starting from precomputed rows.
NavSolutionError solution_error_from_rows(std::span<const AnchorRow> rows,
                                          const EarthModel& earth = {});

/// Appends rows for every candidate shell member visible above the mask.
/// `candidates` empty means "scan the whole shell". `bandwidth_for_sigma_hz`
/// selects the sigma rule (pass model.reference_bandwidth_hz for GPS).
/// Returns the number of rows appended.
std::size_t gather_anchor_rows(const EcefPoint& user, const Shell& shell,
                               std::span<const std::uint32_t> candidates,
                               double sin_mask, double bandwidth_for_sigma_hz,
                               const RangingModel& model,
                               std::vector<AnchorRow>& out);

}  // namespace cnr

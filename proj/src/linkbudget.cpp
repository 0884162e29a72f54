#include "cnrsim/linkbudget.hpp"

#include <array>
#include <cmath>

#include "cnrsim/errors.hpp"

namespace cnr {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (positive half; nodes are symmetric). Standard QK15 coefficients.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

/// Integrand of the ergodic capacity after integration by parts and the
/// substitution x = mean * u / (1 - u):
///   E[ln(1+snr)] = integral_0^1 exp(-u/(1-u)) * mean / (1 + mean*u/(1-u))
///                  / (1-u)^2 du.
/// The exponential decay in u is independent of the mean, which keeps the
/// mass of the integrand away from u = 1 for every mean.
inline double capacity_integrand(double u, double mean) noexcept {
  const double one_minus = 1.0 - u;
  if (one_minus <= 0.0) return 0.0;
  const double z = u / one_minus;
  if (z > 745.0) return 0.0;  // exp underflows; integrand is exactly 0 here
  const double num = std::exp(-z) * mean;
  return num / ((1.0 + mean * z) * (one_minus * one_minus));
}

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult qk15(double a, double b, double mean) noexcept {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double k = 0.0;
  double g = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = capacity_integrand(mid - dx, mean);
    const double f2 = capacity_integrand(mid + dx, mean);
    const double sum = (i == 7) ? f1 : f1 + f2;  // centre node counted once
    k += kKronrodWeights[i] * sum;
    if (i % 2 == 1) {
      g += kGaussWeights[i / 2] * sum;
    }
  }
  k *= half;
  g *= half;
  return {k, std::abs(k - g)};
}

double adaptive_qk15(double a, double b, double mean, double abs_tol,
                     int depth) noexcept {
  const PanelResult r = qk15(a, b, mean);
  if (r.error <= abs_tol || depth >= 60) {
    return r.kronrod;
  }
  const double mid = 0.5 * (a + b);
  return adaptive_qk15(a, mid, mean, 0.5 * abs_tol, depth + 1) +
         adaptive_qk15(mid, b, mean, 0.5 * abs_tol, depth + 1);
}

constexpr double kLn2 = 0.6931471805599453094172321214581766;

}  // namespace

double path_loss_db(double distance_km, const PathLossModel& model) {
  if (!(distance_km > 0.0)) {
    throw invalid_parameter_error("path_loss_db: distance must be > 0");
  }
  return model.offset_db + model.slope_db_per_decade * std::log10(distance_km);
}

double mean_snr_linear(const LinkBudget& budget,
                       const PathLossModel& path_loss) {
  if (!(budget.tx_power_w > 0.0)) {
    throw invalid_parameter_error("mean_snr_linear: tx power must be > 0");
  }
  if (!(budget.bandwidth_hz > 0.0)) {
    throw invalid_parameter_error("mean_snr_linear: bandwidth must be > 0");
  }
  const double tx_dbm = 10.0 * std::log10(budget.tx_power_w * 1e3);
  const double db = tx_dbm + budget.combined_gain_db -
                    path_loss_db(budget.distance_km, path_loss) -
                    budget.noise_psd_dbm_hz - budget.noise_figure_db;
  // Dividing by B after exponentiating keeps bandwidth scaling exact.
  return std::pow(10.0, db / 10.0) / budget.bandwidth_hz;
}

double outage_probability(double mean_snr, double bandwidth_hz,
                          double rate_threshold_bps) {
  if (!(mean_snr > 0.0)) {
    throw invalid_parameter_error("outage_probability: mean SNR must be > 0");
  }
  if (!(bandwidth_hz > 0.0)) {
    throw invalid_parameter_error("outage_probability: bandwidth must be > 0");
  }
  if (rate_threshold_bps < 0.0) {
    throw invalid_parameter_error(
        "outage_probability: rate threshold must be >= 0");
  }
  // P(B log2(1+snr) < R) = P(snr < 2^(R/B) - 1) = 1 - exp(-(2^(R/B)-1)/mean).
  const double needed = std::exp2(rate_threshold_bps / bandwidth_hz) - 1.0;
  return -std::expm1(-needed / mean_snr);
}

double ergodic_capacity_bps(double mean_snr, double bandwidth_hz) {
  if (!(mean_snr >= 0.0)) {
    throw invalid_parameter_error(
        "ergodic_capacity_bps: mean SNR must be >= 0");
  }
  if (!(bandwidth_hz > 0.0)) {
    throw invalid_parameter_error(
        "ergodic_capacity_bps: bandwidth must be > 0");
  }
  if (mean_snr == 0.0) return 0.0;
  const PanelResult whole = qk15(0.0, 1.0, mean_snr);
  const double abs_tol = 1e-9 * std::max(whole.kronrod, 1e-300);
  const double nats = adaptive_qk15(0.0, 1.0, mean_snr, abs_tol, 0);
  return bandwidth_hz * nats / kLn2;
}

double draw_instantaneous_snr(double mean_snr, SplitMix64& rng) {
  if (!(mean_snr >= 0.0)) {
    throw invalid_parameter_error(
        "draw_instantaneous_snr: mean SNR must be >= 0");
  }
  return rng.next_exponential(mean_snr);
}

CapacityStats capacity_stats(const LinkBudget& budget,
                             double rate_threshold_bps,
                             const PathLossModel& path_loss) {
  CapacityStats stats;
  stats.mean_snr_linear = mean_snr_linear(budget, path_loss);
  stats.outage_probability = outage_probability(
      stats.mean_snr_linear, budget.bandwidth_hz, rate_threshold_bps);
  stats.ergodic_capacity_bps =
      ergodic_capacity_bps(stats.mean_snr_linear, budget.bandwidth_hz);
  return stats;
}

}  // namespace cnr

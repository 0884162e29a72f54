#pragma once

#include "cnrsim/rng.hpp"

namespace cnr {

/// Log-distance path-loss coefficients: PL(d) = offset + slope * log10(d_km).
struct PathLossModel {
  double offset_db = 110.0;
  double slope_db_per_decade = 37.6;
};

/// Inputs of a single downlink budget. Powers in watts, gains/figures in dB,
/// noise power spectral density in dBm/Hz, bandwidth in Hz, distance in km.
/// `combined_gain_db` folds together both antenna gains and any fixed margin.
struct LinkBudget {
  double tx_power_w = 20.0;
  double combined_gain_db = 55.0;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 7.0;
  double bandwidth_hz = 250e6;
  double distance_km = 500.0;
};

/// Summary of a link's fading-averaged behaviour.
struct CapacityStats {
  double mean_snr_linear = 0.0;
  double outage_probability = 0.0;
  double ergodic_capacity_bps = 0.0;
};

/// Log-distance path loss in dB at the given range.
/// Throws invalid_parameter_error for non-positive distances.
double path_loss_db(double distance_km, const PathLossModel& model = {});

/// Fading-averaged SNR (linear) of the budget:
///   10^((Ptx_dBm + G - PL(d) - N0_dBm/Hz - NF)/10) / B.
/// The bandwidth division happens in linear space, so halving/doubling B
/// scales the result exactly in floating point.
double mean_snr_linear(const LinkBudget& budget,
                       const PathLossModel& path_loss = {});

/// Probability that a Rayleigh-faded link's instantaneous Shannon rate
/// B*log2(1+snr) falls below `rate_threshold_bps`. Closed form for an
/// exponential SNR with the given mean:
///   1 - exp(-(2^(R/B) - 1) / mean_snr).
double outage_probability(double mean_snr, double bandwidth_hz,
                          double rate_threshold_bps);

/// Fading-averaged Shannon rate B * E[log2(1 + snr)] for exponential SNR,
/// evaluated by adaptive Gauss-Kronrod quadrature to 1e-9 relative accuracy.
double ergodic_capacity_bps(double mean_snr, double bandwidth_hz);

/// One Rayleigh-fading draw: the instantaneous SNR is exponential with the
/// given mean (inverse-CDF sampling, one uniform consumed).
double draw_instantaneous_snr(double mean_snr, SplitMix64& rng);

/// Convenience bundle of the three fading-averaged quantities for one link.
CapacityStats capacity_stats(const LinkBudget& budget,
                             double rate_threshold_bps,
                             const PathLossModel& path_loss = {});

}  // namespace cnr

"""Python interface to the constellation simulator core."""

from ._core import (
    MetricsReport,
    ScenarioConfig,
    SimulationError,
    aoi_s,
    azimuth_resolution_m,
    build_regime,
    config_fingerprint,
    download_time_s,
    elevation_angle,
    ergodic_capacity_bps,
    mean_snr_linear,
    outage_probability,
    parse_config,
    parse_config_text,
    path_loss_db,
    range_resolution_m,
    ranging_sigma_m,
    revisit_time_s,
    run_experiment,
    run_trial,
    safety_message_rate_bps,
    serialize_config,
    slant_range,
    validate_config,
    visibility_cap_half_angle_deg,
)

__all__ = [
    "MetricsReport",
    "ScenarioConfig",
    "SimulationError",
    "aoi_s",
    "azimuth_resolution_m",
    "build_regime",
    "config_fingerprint",
    "download_time_s",
    "elevation_angle",
    "ergodic_capacity_bps",
    "mean_snr_linear",
    "outage_probability",
    "parse_config",
    "parse_config_text",
    "path_loss_db",
    "range_resolution_m",
    "ranging_sigma_m",
    "revisit_time_s",
    "run_experiment",
    "run_trial",
    "safety_message_rate_bps",
    "serialize_config",
    "slant_range",
    "validate_config",
    "visibility_cap_half_angle_deg",
]

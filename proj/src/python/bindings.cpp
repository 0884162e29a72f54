// Python bindings for the main operations: the deterministic calculators,
// config handling, and the Monte Carlo experiment driver.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cnrsim/config.hpp"
#include "cnrsim/errors.hpp"
#include "cnrsim/geometry.hpp"
#include "cnrsim/linkbudget.hpp"
#include "cnrsim/navigation.hpp"
#include "cnrsim/radar_svg.hpp"
#include "cnrsim/report.hpp"
#include "cnrsim/scenario.hpp"
#include "cnrsim/sensing.hpp"
#include "cnrsim/simulator.hpp"

namespace py = pybind11;

namespace {

cnr::EcefPoint to_point(const std::array<double, 3>& p) {
  return {p[0], p[1], p[2]};
}

std::vector<cnr::IntegrationLevel> to_levels(
    const std::vector<std::string>& names) {
  std::vector<cnr::IntegrationLevel> levels;
  levels.reserve(names.size());
  for (const std::string& name : names) {
    levels.push_back(cnr::parse_level(name));
  }
  return levels;
}

py::dict regime_dict(const cnr::RegimeResources& regime) {
  const auto one = [](const cnr::FunctionalResources& r) {
    py::dict d;
    d["satellite_count"] = r.satellite_count;
    d["bandwidth_hz"] = r.bandwidth_hz;
    return d;
  };
  py::dict d;
  d["comm"] = one(regime.comm);
  d["nav"] = one(regime.nav);
  d["sensing"] = one(regime.sensing);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Monte Carlo simulator of integrated communication, navigation and "
      "remote sensing in a LEO mega-constellation";

  py::register_exception<cnr::error>(m, "SimulationError");

  // --- config ---------------------------------------------------------------
  py::class_<cnr::ScenarioConfig> config(m, "ScenarioConfig");
  config.def(py::init<>());
#define CNRSIM_FIELD(name) config.def_readwrite(#name, &cnr::ScenarioConfig::name)
  CNRSIM_FIELD(comm_satellites);
  CNRSIM_FIELD(nav_satellites);
  CNRSIM_FIELD(sensing_satellites);
  CNRSIM_FIELD(altitude_km);
  CNRSIM_FIELD(comm_bandwidth_mhz);
  CNRSIM_FIELD(nav_bandwidth_mhz);
  CNRSIM_FIELD(sensing_bandwidth_mhz);
  CNRSIM_FIELD(comm_tx_power_w);
  CNRSIM_FIELD(nav_tx_power_w);
  CNRSIM_FIELD(sensing_tx_power_w);
  CNRSIM_FIELD(combined_gain_db);
  CNRSIM_FIELD(noise_psd_dbm_hz);
  CNRSIM_FIELD(noise_figure_db);
  CNRSIM_FIELD(path_loss_offset_db);
  CNRSIM_FIELD(path_loss_slope_db_per_decade);
  CNRSIM_FIELD(small_scale_fading);
  CNRSIM_FIELD(vehicle_count);
  CNRSIM_FIELD(cap_area_km2);
  CNRSIM_FIELD(comm_elevation_mask_deg);
  CNRSIM_FIELD(nav_elevation_mask_deg);
  CNRSIM_FIELD(rate_threshold_mbps);
  CNRSIM_FIELD(vehicle_speed_max_kmh);
  CNRSIM_FIELD(report_spacing_m);
  CNRSIM_FIELD(perception_objects);
  CNRSIM_FIELD(perception_bytes_per_object);
  CNRSIM_FIELD(maneuver_bytes);
  CNRSIM_FIELD(ranging_coeff_m_per_m);
  CNRSIM_FIELD(ranging_bandwidth_scaling);
  CNRSIM_FIELD(nav_reference_bandwidth_mhz);
  CNRSIM_FIELD(gps_enabled);
  CNRSIM_FIELD(gps_satellites);
  CNRSIM_FIELD(gps_altitude_km);
  CNRSIM_FIELD(gps_layout);
  CNRSIM_FIELD(gps_inclination_deg);
  CNRSIM_FIELD(sar_view_angle_deg);
  CNRSIM_FIELD(sar_swath_width_km);
  CNRSIM_FIELD(sar_antenna_length_m);
  CNRSIM_FIELD(sar_fusion_factor);
  CNRSIM_FIELD(fusion_halves_revisit);
  CNRSIM_FIELD(sensing_data_gbits);
  CNRSIM_FIELD(sensing_spectral_efficiency_bps_hz);
  CNRSIM_FIELD(earth_radius_km);
  CNRSIM_FIELD(earth_mu_km3_s2);
  CNRSIM_FIELD(speed_of_light_m_s);
  CNRSIM_FIELD(rng_algorithm);
#undef CNRSIM_FIELD
  config.def("__repr__", [](const cnr::ScenarioConfig& c) {
    return "<ScenarioConfig fingerprint=" + cnr::config_fingerprint(c) + ">";
  });

  m.def("parse_config", &cnr::parse_config, py::arg("path"),
        "Parse a scenario config file");
  m.def("parse_config_text", &cnr::parse_config_text, py::arg("text"),
        "Parse scenario config text");
  m.def("serialize_config", &cnr::serialize_config, py::arg("config"),
        "Canonical text form of a config");
  m.def("config_fingerprint", &cnr::config_fingerprint, py::arg("config"),
        "16-hex-digit fingerprint of the canonical form");
  m.def("validate_config", &cnr::validate_config, py::arg("config"),
        "Bound-check every field; raises SimulationError on violations");

  // --- geometry calculators ---------------------------------------------------
  m.def(
      "elevation_angle",
      [](const std::array<double, 3>& user, const std::array<double, 3>& sat) {
        return cnr::elevation_angle(to_point(user), to_point(sat));
      },
      py::arg("user_km"), py::arg("sat_km"),
      "Elevation of a satellite above a surface user's horizon, degrees");
  m.def(
      "slant_range",
      [](const std::array<double, 3>& user, const std::array<double, 3>& sat) {
        return cnr::slant_range(to_point(user), to_point(sat));
      },
      py::arg("user_km"), py::arg("sat_km"), "Distance in km");
  m.def(
      "visibility_cap_half_angle_deg",
      [](double mask_deg, double altitude_km, double earth_radius_km) {
        cnr::EarthModel earth;
        earth.radius_km = earth_radius_km;
        return cnr::visibility_cap_half_angle_deg(mask_deg, altitude_km,
                                                  earth);
      },
      py::arg("mask_deg"), py::arg("altitude_km"),
      py::arg("earth_radius_km") = 6371.0,
      "Half-angle of the ground cap that sees a satellite above the mask");

  // --- link budget -------------------------------------------------------------
  m.def(
      "path_loss_db",
      [](double distance_km, double offset_db, double slope_db_per_decade) {
        return cnr::path_loss_db(distance_km,
                                 {offset_db, slope_db_per_decade});
      },
      py::arg("distance_km"), py::arg("offset_db") = 110.0,
      py::arg("slope_db_per_decade") = 37.6);
  m.def(
      "mean_snr_linear",
      [](double tx_power_w, double combined_gain_db, double noise_psd_dbm_hz,
         double noise_figure_db, double bandwidth_hz, double distance_km) {
        return cnr::mean_snr_linear({tx_power_w, combined_gain_db,
                                     noise_psd_dbm_hz, noise_figure_db,
                                     bandwidth_hz, distance_km});
      },
      py::arg("tx_power_w"), py::arg("combined_gain_db"),
      py::arg("noise_psd_dbm_hz"), py::arg("noise_figure_db"),
      py::arg("bandwidth_hz"), py::arg("distance_km"));
  m.def("outage_probability", &cnr::outage_probability, py::arg("mean_snr"),
        py::arg("bandwidth_hz"), py::arg("rate_threshold_bps"));
  m.def("ergodic_capacity_bps", &cnr::ergodic_capacity_bps,
        py::arg("mean_snr"), py::arg("bandwidth_hz"));

  // --- navigation ---------------------------------------------------------------
  m.def(
      "ranging_sigma_m",
      [](double distance_km, double nav_bandwidth_hz, double coeff_m_per_m,
         const std::string& scaling, double reference_bandwidth_hz) {
        cnr::RangingModel model;
        model.coeff_m_per_m = coeff_m_per_m;
        model.reference_bandwidth_hz = reference_bandwidth_hz;
        if (scaling == "off") {
          model.scaling = cnr::BandwidthScaling::Off;
        } else if (scaling == "linear") {
          model.scaling = cnr::BandwidthScaling::Linear;
        } else if (scaling == "sqrt") {
          model.scaling = cnr::BandwidthScaling::SquareRoot;
        } else {
          throw cnr::invalid_parameter_error(
              "scaling must be off, linear or sqrt");
        }
        return cnr::ranging_sigma_m(distance_km, nav_bandwidth_hz, model);
      },
      py::arg("distance_km"), py::arg("nav_bandwidth_hz"),
      py::arg("coeff_m_per_m") = 2.28e-8, py::arg("scaling") = "linear",
      py::arg("reference_bandwidth_hz") = 25e6);

  // --- sensing -------------------------------------------------------------------
  m.def("range_resolution_m", &cnr::range_resolution_m,
        py::arg("bandwidth_hz"), py::arg("view_angle_deg"),
        py::arg("fusion_factor") = 1,
        py::arg("speed_of_light_m_s") = 299792458.0);
  m.def("azimuth_resolution_m", &cnr::azimuth_resolution_m,
        py::arg("antenna_length_m"));
  m.def(
      "revisit_time_s",
      [](long sat_count, double swath_width_km, double altitude_km,
         int fusion_factor, double earth_radius_km, double earth_mu_km3_s2) {
        cnr::EarthModel earth;
        earth.radius_km = earth_radius_km;
        earth.mu_km3_s2 = earth_mu_km3_s2;
        return cnr::revisit_time_s(sat_count, swath_width_km, altitude_km,
                                   earth, fusion_factor);
      },
      py::arg("sat_count"), py::arg("swath_width_km"), py::arg("altitude_km"),
      py::arg("fusion_factor") = 1, py::arg("earth_radius_km") = 6371.0,
      py::arg("earth_mu_km3_s2") = 398600.4418);
  m.def("download_time_s", &cnr::download_time_s, py::arg("data_size_bits"),
        py::arg("spectral_efficiency_bps_hz"), py::arg("bandwidth_hz"));
  m.def("aoi_s", &cnr::aoi_s, py::arg("revisit_time_s"),
        py::arg("download_time_s"));

  // --- scenario -------------------------------------------------------------------
  m.def("safety_message_rate_bps", &cnr::safety_message_rate_bps,
        py::arg("speed_m_s"), py::arg("report_spacing_m"),
        py::arg("perception_objects"), py::arg("bytes_per_object"),
        py::arg("maneuver_bytes"));
  m.def(
      "build_regime",
      [](const std::string& level, const cnr::ScenarioConfig& config) {
        return regime_dict(cnr::build_regime(cnr::parse_level(level), config));
      },
      py::arg("level"), py::arg("config"));

  // --- simulator ------------------------------------------------------------------
  py::class_<cnr::MetricsReport>(m, "MetricsReport")
      .def_readonly("trials", &cnr::MetricsReport::trials)
      .def_readonly("master_seed", &cnr::MetricsReport::master_seed)
      .def_readonly("config_fingerprint",
                    &cnr::MetricsReport::config_fingerprint)
      .def("to_csv", &cnr::render_csv)
      .def("to_json", &cnr::render_json)
      .def("to_svg",
           [](const cnr::MetricsReport& report) {
             return cnr::render_radar_svg(report);
           })
      .def(
          "emit",
          [](const cnr::MetricsReport& report, const std::string& format,
             const std::string& out_dir) {
            return cnr::emit_report(report, cnr::parse_format(format),
                                    out_dir);
          },
          py::arg("format"), py::arg("out_dir"),
          "Write report.csv / report.json / radar.svg; returns the paths")
      .def("__repr__", [](const cnr::MetricsReport& report) {
        return "<MetricsReport levels=" + std::to_string(report.levels.size()) +
               " trials=" + std::to_string(report.trials) + ">";
      });

  m.def(
      "run_trial",
      [](const std::string& level, const cnr::ScenarioConfig& config,
         std::uint64_t seed) {
        const cnr::TrialMetrics t =
            cnr::run_trial(cnr::parse_level(level), config, seed);
        py::dict d;
        d["outage_probability"] = t.outage_probability;
        d["outage_closed_form"] = t.outage_closed_form;
        d["ergodic_capacity_bps"] = t.ergodic_capacity_bps;
        d["positioning_error_m"] = t.positioning_error_m;
        d["timing_error_s"] = t.timing_error_s;
        d["nav_availability"] = t.nav_availability;
        d["range_resolution_m"] = t.range_resolution_m;
        d["aoi_s"] = t.aoi_s;
        return d;
      },
      py::arg("level"), py::arg("config"), py::arg("seed"),
      "One Monte Carlo snapshot; returns the per-trial metric dict");
  m.def(
      "run_experiment",
      [](const cnr::ScenarioConfig& config,
         const std::vector<std::string>& levels, long trials,
         std::uint64_t seed, int threads) {
        const auto parsed = to_levels(levels);
        return cnr::run_experiment(parsed, config, trials, seed, threads);
      },
      py::arg("config"),
      py::arg("levels") =
          std::vector<std::string>{"traditional", "function_level",
                                   "signal_level"},
      py::arg("trials") = 100, py::arg("seed") = 42, py::arg("threads") = 1,
      "Run paired trials for the requested levels and aggregate");
}

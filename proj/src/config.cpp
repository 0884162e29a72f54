#include "cnrsim/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

#include "cnrsim/errors.hpp"

namespace cnr {

namespace {

// ---------------------------------------------------------------------------
// Key table
// ---------------------------------------------------------------------------

/// Physical dimension of a key, for unit-suffix conversion. The canonical
/// unit is the one encoded in the key name.
enum class Dim {
  None,         // plain number
  MegaHertz,    // canonical MHz
  Kilometre,    // canonical km
  Metre,        // canonical m
  Watt,         // canonical W
  Decibel,      // canonical dB (no scaling suffixes)
  Degree,       // canonical deg
  MegabitPerS,  // canonical Mbps
  KmPerHour,    // canonical km/h
  Gigabit,      // canonical Gbit
  MetrePerS,    // canonical m/s
};

enum class Kind { Double, Integer, Boolean, Text };

struct Bounds {
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
  bool min_exclusive = false;
  bool max_exclusive = false;
};

struct KeySpec {
  std::string_view name;
  Kind kind;
  Dim dim = Dim::None;
  double ScenarioConfig::* d = nullptr;
  long ScenarioConfig::* i = nullptr;
  bool ScenarioConfig::* b = nullptr;
  std::string ScenarioConfig::* s = nullptr;
  Bounds bounds;
  std::vector<std::string_view> choices;  // Text keys: allowed values
};

KeySpec dkey(std::string_view name, double ScenarioConfig::* m, Dim dim,
             Bounds bounds) {
  KeySpec k;
  k.name = name;
  k.kind = Kind::Double;
  k.dim = dim;
  k.d = m;
  k.bounds = bounds;
  return k;
}

KeySpec ikey(std::string_view name, long ScenarioConfig::* m, Bounds bounds) {
  KeySpec k;
  k.name = name;
  k.kind = Kind::Integer;
  k.i = m;
  k.bounds = bounds;
  return k;
}

KeySpec bkey(std::string_view name, bool ScenarioConfig::* m) {
  KeySpec k;
  k.name = name;
  k.kind = Kind::Boolean;
  k.b = m;
  return k;
}

KeySpec skey(std::string_view name, std::string ScenarioConfig::* m,
             std::vector<std::string_view> choices) {
  KeySpec k;
  k.name = name;
  k.kind = Kind::Text;
  k.s = m;
  k.choices = std::move(choices);
  return k;
}

constexpr Bounds kPositive{0.0, std::numeric_limits<double>::infinity(), true,
                           false};
constexpr Bounds kNonNegative{0.0, std::numeric_limits<double>::infinity(),
                              false, false};
constexpr Bounds kAtLeastOne{1.0, std::numeric_limits<double>::infinity(),
                             false, false};
constexpr Bounds kMaskRange{0.0, 90.0, false, false};
constexpr Bounds kViewRange{0.0, 90.0, true, false};
constexpr Bounds kInclination{0.0, 180.0, false, false};
constexpr Bounds kUnbounded{};

/// Declaration order here is the canonical serialization order.
const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      ikey("comm_satellites", &ScenarioConfig::comm_satellites, kNonNegative),
      ikey("nav_satellites", &ScenarioConfig::nav_satellites, kNonNegative),
      ikey("sensing_satellites", &ScenarioConfig::sensing_satellites,
           kNonNegative),
      dkey("altitude_km", &ScenarioConfig::altitude_km, Dim::Kilometre,
           kPositive),
      dkey("comm_bandwidth_mhz", &ScenarioConfig::comm_bandwidth_mhz,
           Dim::MegaHertz, kPositive),
      dkey("nav_bandwidth_mhz", &ScenarioConfig::nav_bandwidth_mhz,
           Dim::MegaHertz, kPositive),
      dkey("sensing_bandwidth_mhz", &ScenarioConfig::sensing_bandwidth_mhz,
           Dim::MegaHertz, kPositive),
      dkey("comm_tx_power_w", &ScenarioConfig::comm_tx_power_w, Dim::Watt,
           kPositive),
      dkey("nav_tx_power_w", &ScenarioConfig::nav_tx_power_w, Dim::Watt,
           kPositive),
      dkey("sensing_tx_power_w", &ScenarioConfig::sensing_tx_power_w,
           Dim::Watt, kPositive),
      dkey("combined_gain_db", &ScenarioConfig::combined_gain_db, Dim::Decibel,
           kUnbounded),
      dkey("noise_psd_dbm_hz", &ScenarioConfig::noise_psd_dbm_hz, Dim::Decibel,
           kUnbounded),
      dkey("noise_figure_db", &ScenarioConfig::noise_figure_db, Dim::Decibel,
           kNonNegative),
      dkey("path_loss_offset_db", &ScenarioConfig::path_loss_offset_db,
           Dim::Decibel, kNonNegative),
      dkey("path_loss_slope_db_per_decade",
           &ScenarioConfig::path_loss_slope_db_per_decade, Dim::Decibel,
           kNonNegative),
      skey("small_scale_fading", &ScenarioConfig::small_scale_fading,
           {"rayleigh"}),
      ikey("vehicle_count", &ScenarioConfig::vehicle_count, kAtLeastOne),
      dkey("cap_area_km2", &ScenarioConfig::cap_area_km2, Dim::None,
           kPositive),
      dkey("comm_elevation_mask_deg", &ScenarioConfig::comm_elevation_mask_deg,
           Dim::Degree, kMaskRange),
      dkey("nav_elevation_mask_deg", &ScenarioConfig::nav_elevation_mask_deg,
           Dim::Degree, kMaskRange),
      dkey("rate_threshold_mbps", &ScenarioConfig::rate_threshold_mbps,
           Dim::MegabitPerS, kNonNegative),
      dkey("vehicle_speed_max_kmh", &ScenarioConfig::vehicle_speed_max_kmh,
           Dim::KmPerHour, kNonNegative),
      dkey("report_spacing_m", &ScenarioConfig::report_spacing_m, Dim::Metre,
           kPositive),
      ikey("perception_objects", &ScenarioConfig::perception_objects,
           kNonNegative),
      ikey("perception_bytes_per_object",
           &ScenarioConfig::perception_bytes_per_object, kNonNegative),
      ikey("maneuver_bytes", &ScenarioConfig::maneuver_bytes, kNonNegative),
      dkey("ranging_coeff_m_per_m", &ScenarioConfig::ranging_coeff_m_per_m,
           Dim::None, kPositive),
      skey("ranging_bandwidth_scaling",
           &ScenarioConfig::ranging_bandwidth_scaling,
           {"off", "linear", "sqrt"}),
      dkey("nav_reference_bandwidth_mhz",
           &ScenarioConfig::nav_reference_bandwidth_mhz, Dim::MegaHertz,
           kPositive),
      bkey("gps_enabled", &ScenarioConfig::gps_enabled),
      ikey("gps_satellites", &ScenarioConfig::gps_satellites, kAtLeastOne),
      dkey("gps_altitude_km", &ScenarioConfig::gps_altitude_km, Dim::Kilometre,
           kPositive),
      skey("gps_layout", &ScenarioConfig::gps_layout, {"uniform", "walker"}),
      dkey("gps_inclination_deg", &ScenarioConfig::gps_inclination_deg,
           Dim::Degree, kInclination),
      dkey("sar_view_angle_deg", &ScenarioConfig::sar_view_angle_deg,
           Dim::Degree, kViewRange),
      dkey("sar_swath_width_km", &ScenarioConfig::sar_swath_width_km,
           Dim::Kilometre, kPositive),
      dkey("sar_antenna_length_m", &ScenarioConfig::sar_antenna_length_m,
           Dim::Metre, kPositive),
      ikey("sar_fusion_factor", &ScenarioConfig::sar_fusion_factor,
           kAtLeastOne),
      bkey("fusion_halves_revisit", &ScenarioConfig::fusion_halves_revisit),
      dkey("sensing_data_gbits", &ScenarioConfig::sensing_data_gbits,
           Dim::Gigabit, kNonNegative),
      dkey("sensing_spectral_efficiency_bps_hz",
           &ScenarioConfig::sensing_spectral_efficiency_bps_hz, Dim::None,
           kPositive),
      dkey("earth_radius_km", &ScenarioConfig::earth_radius_km, Dim::Kilometre,
           kPositive),
      dkey("earth_mu_km3_s2", &ScenarioConfig::earth_mu_km3_s2, Dim::None,
           kPositive),
      dkey("speed_of_light_m_s", &ScenarioConfig::speed_of_light_m_s,
           Dim::MetrePerS, kPositive),
      skey("rng_algorithm", &ScenarioConfig::rng_algorithm, {"splitmix64"}),
  };
  return table;
}

/// Multiplicative factor that converts `suffix` into the dimension's
/// canonical unit, or nullopt when the suffix does not belong to it.
std::optional<double> suffix_factor(Dim dim, std::string_view suffix) {
  struct Entry {
    std::string_view suffix;
    double factor;
  };
  const auto lookup = [&](std::initializer_list<Entry> entries)
      -> std::optional<double> {
    for (const Entry& e : entries) {
      if (e.suffix == suffix) return e.factor;
    }
    return std::nullopt;
  };
  switch (dim) {
    case Dim::None:
      return std::nullopt;
    case Dim::MegaHertz:
      return lookup({{"Hz", 1e-6}, {"kHz", 1e-3}, {"MHz", 1.0}, {"GHz", 1e3}});
    case Dim::Kilometre:
      return lookup({{"m", 1e-3}, {"km", 1.0}});
    case Dim::Metre:
      return lookup({{"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}, {"km", 1e3}});
    case Dim::Watt:
      return lookup({{"mW", 1e-3}, {"W", 1.0}, {"kW", 1e3}});
    case Dim::Decibel:
      return lookup({{"dB", 1.0}});
    case Dim::Degree:
      return lookup({{"deg", 1.0}});
    case Dim::MegabitPerS:
      return lookup({{"bps", 1e-6},
                     {"kbps", 1e-3},
                     {"Mbps", 1.0},
                     {"Gbps", 1e3}});
    case Dim::KmPerHour:
      return lookup({{"km/h", 1.0}, {"m/s", 3.6}});
    case Dim::Gigabit:
      return lookup({{"bit", 1e-9},
                     {"kbit", 1e-6},
                     {"Mbit", 1e-3},
                     {"Gbit", 1.0},
                     {"Tbit", 1e3}});
    case Dim::MetrePerS:
      return lookup({{"m/s", 1.0}, {"km/s", 1e3}});
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view token, const KeySpec& key, int line) {
  const std::string_view trimmed = trim(token);
  double value = 0.0;
  const char* begin = trimmed.data();
  const char* end = trimmed.data() + trimmed.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin) {
    throw config_parse_error("line " + std::to_string(line) + ": key '" +
                                 std::string(key.name) +
                                 "' has a malformed numeric value '" +
                                 std::string(trimmed) + "'",
                             line);
  }
  std::string_view rest = trim(std::string_view(ptr, end - ptr));
  if (!rest.empty()) {
    const std::optional<double> factor = suffix_factor(key.dim, rest);
    if (!factor) {
      throw config_parse_error(
          "line " + std::to_string(line) + ": key '" + std::string(key.name) +
              "' does not accept unit suffix '" + std::string(rest) + "'",
          line);
    }
    value *= *factor;
  }
  return value;
}

std::string bounds_text(const Bounds& b) {
  std::ostringstream os;
  os << (b.min_exclusive ? "(" : "[");
  if (std::isinf(b.min)) {
    os << "-inf";
  } else {
    os << b.min;
  }
  os << ", ";
  if (std::isinf(b.max)) {
    os << "inf";
  } else {
    os << b.max;
  }
  os << (b.max_exclusive ? ")" : "]");
  return os.str();
}

void check_bounds(const KeySpec& key, double value) {
  const Bounds& b = key.bounds;
  const bool low = b.min_exclusive ? value > b.min : value >= b.min;
  const bool high = b.max_exclusive ? value < b.max : value <= b.max;
  if (!low || !high || std::isnan(value)) {
    throw config_validation_error(
        "key '" + std::string(key.name) + "' = " + std::to_string(value) +
            " is outside its valid range " + bounds_text(b),
        std::string(key.name));
  }
}

void apply_key(ScenarioConfig& config, const KeySpec& key,
               std::string_view raw, int line) {
  switch (key.kind) {
    case Kind::Double: {
      const double value = parse_number(raw, key, line);
      check_bounds(key, value);
      config.*(key.d) = value;
      return;
    }
    case Kind::Integer: {
      const double value = parse_number(raw, key, line);
      if (value != std::floor(value) || std::abs(value) > 9.0e15) {
        throw config_parse_error("line " + std::to_string(line) + ": key '" +
                                     std::string(key.name) +
                                     "' requires an integer value",
                                 line);
      }
      check_bounds(key, value);
      config.*(key.i) = static_cast<long>(value);
      return;
    }
    case Kind::Boolean: {
      const std::string_view v = trim(raw);
      if (v == "true") {
        config.*(key.b) = true;
      } else if (v == "false") {
        config.*(key.b) = false;
      } else {
        throw config_parse_error("line " + std::to_string(line) + ": key '" +
                                     std::string(key.name) +
                                     "' requires true or false",
                                 line);
      }
      return;
    }
    case Kind::Text: {
      const std::string_view v = trim(raw);
      for (const std::string_view choice : key.choices) {
        if (v == choice) {
          config.*(key.s) = std::string(v);
          return;
        }
      }
      std::string allowed;
      for (const std::string_view choice : key.choices) {
        if (!allowed.empty()) allowed += ", ";
        allowed += std::string(choice);
      }
      throw config_validation_error(
          "key '" + std::string(key.name) + "' = '" + std::string(v) +
              "' is not one of: " + allowed,
          std::string(key.name));
    }
  }
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig config;
  std::set<std::string, std::less<>> seen;
  std::istringstream stream(text);
  std::string raw_line;
  int line = 0;
  while (std::getline(stream, raw_line)) {
    ++line;
    std::string_view body(raw_line);
    if (const std::size_t hash = body.find('#');
        hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw config_parse_error(
          "line " + std::to_string(line) + ": expected 'key = value'", line);
    }
    const std::string_view name = trim(body.substr(0, eq));
    const std::string_view value = body.substr(eq + 1);
    if (name.empty()) {
      throw config_parse_error(
          "line " + std::to_string(line) + ": missing key before '='", line);
    }
    const KeySpec* spec = nullptr;
    for (const KeySpec& k : key_table()) {
      if (k.name == name) {
        spec = &k;
        break;
      }
    }
    if (spec == nullptr) {
      throw config_parse_error("line " + std::to_string(line) +
                                   ": unknown key '" + std::string(name) + "'",
                               line);
    }
    if (!seen.insert(std::string(name)).second) {
      throw config_parse_error("line " + std::to_string(line) +
                                   ": duplicate key '" + std::string(name) +
                                   "'",
                               line);
    }
    apply_key(config, *spec, value, line);
  }
  validate_config(config);
  return config;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw io_error("cannot read config file '" + path + "'", path);
  }
  std::ostringstream content;
  content << file.rdbuf();
  if (file.bad()) {
    throw io_error("error while reading config file '" + path + "'", path);
  }
  return parse_config_text(content.str());
}

std::string serialize_config(const ScenarioConfig& config) {
  std::string out;
  for (const KeySpec& key : key_table()) {
    out += key.name;
    out += " = ";
    switch (key.kind) {
      case Kind::Double:
        out += format_double(config.*(key.d));
        break;
      case Kind::Integer:
        out += std::to_string(config.*(key.i));
        break;
      case Kind::Boolean:
        out += (config.*(key.b)) ? "true" : "false";
        break;
      case Kind::Text:
        out += config.*(key.s);
        break;
    }
    out += '\n';
  }
  return out;
}

std::string config_fingerprint(const ScenarioConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t hash = 0xCBF29CE484222325ull;  // FNV-1a 64 offset basis
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ull;  // FNV-1a 64 prime
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf.data(), 16);
}

void validate_config(const ScenarioConfig& config) {
  for (const KeySpec& key : key_table()) {
    switch (key.kind) {
      case Kind::Double:
        check_bounds(key, config.*(key.d));
        break;
      case Kind::Integer:
        check_bounds(key, static_cast<double>(config.*(key.i)));
        break;
      case Kind::Boolean:
        break;
      case Kind::Text: {
        bool ok = false;
        for (const std::string_view choice : key.choices) {
          if (config.*(key.s) == choice) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          throw config_validation_error(
              "key '" + std::string(key.name) + "' = '" + config.*(key.s) +
                  "' is not an allowed value",
              std::string(key.name));
        }
        break;
      }
    }
  }
  // Cross-field checks that single-key bounds cannot express.
  const double surface = config.earth().surface_area_km2();
  if (config.cap_area_km2 > surface) {
    throw config_validation_error(
        "key 'cap_area_km2' exceeds the Earth's surface area", "cap_area_km2");
  }
  if (config.gps_layout == "walker" && config.gps_satellites % 6 != 0) {
    throw config_validation_error(
        "key 'gps_satellites' must be a multiple of 6 for the walker layout",
        "gps_satellites");
  }
}

}  // namespace cnr

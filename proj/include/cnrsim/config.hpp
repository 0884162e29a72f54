#pragma once

#include <cstdint>
#include <string>

#include "cnrsim/scenario.hpp"

namespace cnr {

/// Parses the flat key-value config format from a file. Unknown keys and
/// duplicates are rejected (parse error with the offending line number);
/// missing keys keep their documented defaults; every value is bound-checked
/// (validation error naming the key). Throws io_error when the file cannot
/// be read.
///
/// Syntax, per line:   key = value   [# comment]
/// Values may carry an SI unit suffix convertible to the key's canonical
/// unit (encoded in the key name), e.g. `comm_bandwidth_mhz = 0.25 GHz`.
ScenarioConfig parse_config(const std::string& path);

/// Same parser over an in-memory string (the file contents).
ScenarioConfig parse_config_text(const std::string& text);

/// Canonical text form: every key in declaration order, one per line, values
/// in canonical units as shortest round-trip decimals. Parsing the output
/// reproduces the config exactly.
std::string serialize_config(const ScenarioConfig& config);

/// FNV-1a 64-bit hash of serialize_config(config), as 16 lowercase hex
/// digits. Two configs fingerprint equal iff they serialize identically.
std::string config_fingerprint(const ScenarioConfig& config);

/// Re-checks every bound on an assembled config (the parser calls this; it
/// is exposed for configs built programmatically). Throws
/// config_validation_error naming the first offending key.
void validate_config(const ScenarioConfig& config);

}  // namespace cnr

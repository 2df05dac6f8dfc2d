#pragma once

#include <string>

#include <json.hpp>

#include "evesim/engine.hpp"

namespace evesim {

inline constexpr int kConfigSchemaVersion = 1;

// Strict parse: unknown keys, type mismatches and a missing/unsupported
// schema_version are all collected and thrown as ConfigError, together
// with SimConfig::validate() results. Absent keys fall back to defaults.
SimConfig config_from_json(const nlohmann::json& j);

// Fully resolved config, stable key order; re-parsing it yields the same
// config (round-trip).
nlohmann::ordered_json config_to_json(const SimConfig& config);

SimConfig load_config_file(const std::string& path);

}  // namespace evesim

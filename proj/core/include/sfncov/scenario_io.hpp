#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sfncov/scenario.hpp"

namespace sfncov {

// Parses scenario JSON. Unknown keys, missing keys and wrong value types are
// ConfigErrors that name the offending parameter.
ScenarioConfig parse_scenario_json(const std::string& json_text);

// Serializes a config back to JSON. Numbers round-trip exactly, so
// parse(serialize(c)) == c.
std::string scenario_config_to_json(const ScenarioConfig& config);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

// Applies "dotted.path=value" overrides to scenario JSON text, e.g.
// "interference.lambda_per_m2=3e-6" or "sfn_stations.0.power_w=12".
// The path must resolve to an existing scalar of the same JSON type;
// anything else is a ConfigError.
std::string apply_scenario_overrides(
    const std::string& json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides);

} // namespace sfncov

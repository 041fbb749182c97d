#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "seisctl/scenario.hpp"

namespace seisctl {

inline constexpr int kConfigSchemaVersion = 1;

/**
 * @brief Parses a scenario file in the `key = value [unit]` format.
 *
 * Lines starting with '#' and blank lines are ignored. Lists are comma
 * separated, matrix rows are separated by ';'. Dimensional values must carry
 * a unit tag and are converted to km, hr, MPa (fluxes stay in m^3/hr).
 * Unknown keys, duplicates, malformed values and every failed validation
 * rule are collected and thrown together as one ConfigError.
 * README.md lists every key.
 */
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config_string(std::string_view text, std::string_view source = "<string>");

/// Canonical echo of a configuration; parse_config_string(format_config(c)) == c.
std::string format_config(const ScenarioConfig& cfg);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace seisctl

#pragma once
// Experiment configuration files. Two flat formats are accepted:
//
//   JSON:  {"k": 4, "n_flows": 20, "algorithm": "corba"}
//   TOML:  k = 4
//          n_flows = 20        # comments run to end of line
//          algorithm = "corba"
//
// Keys mirror the OfflineConfig / OnlineConfig field names (the nested noise
// parameters are spelled noise_rate_min, noise_max_utilization, ...). Unknown keys
// are rejected by name.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coflow/sim.hpp"

namespace coflow {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses config text. JSON is recognised by a leading '{'.
ConfigEntries parse_config_text(std::string_view text);
ConfigEntries load_config_file(const std::string& path);
/// Splits "key=value".
std::pair<std::string, std::string> parse_override(std::string_view assignment);

void set_param(OfflineConfig& config, std::string_view key, std::string_view value);
void set_param(OnlineConfig& config, std::string_view key, std::string_view value);

template <class Config>
void apply_entries(Config& config, const ConfigEntries& entries) {
    for (const auto& [key, value] : entries) set_param(config, key, value);
}

std::vector<std::string> offline_keys();
std::vector<std::string> online_keys();

/// key = value lines in TOML form; parse_config_text reads them back.
std::string describe(const OfflineConfig& config);
std::string describe(const OnlineConfig& config);

}  // namespace coflow

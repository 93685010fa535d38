#pragma once

// Command implementations behind tools/qcopies. Each command reads a merged
// JSON config (defaults < config file < flags) and returns a report plus
// named output files; the executable only parses flags and writes files.

#include <cstdint>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "qcopies/serialize.hpp"

namespace qcopies {

struct CommandOutput {
  Json report;
  std::string summary;  // human-readable text for stdout
  std::vector<std::pair<std::string, std::string>> files;  // file name, contents
};

const std::vector<std::string>& command_names();

// Default values for every key the command accepts.
Json default_config(const std::string& command);

// Overlays file and flag objects onto the defaults. Throws ConfigError on
// unknown commands or keys. A missing seed falls back to QCOPIES_SEED.
Json merge_config(const std::string& command, const Json& file_config, const Json& flag_config);

CommandOutput run_command(const std::string& command, const Json& config);

// 0 success, 2 configuration error, 3 numerical or domain error, 1 other.
int exit_code_for(const std::exception& e);

struct TenPhotonCost {
  double two_photon_rate_hz = 0.0;
  double ten_photon_per_hour = 0.0;
  double hours = 0.0;
  double days = 0.0;
};

// Five independent pairs: ((rate8 * 3600)^{1/4})^5 copies per hour.
TenPhotonCost tenphoton_cost(double rate8_hz, double copies_needed);

// "start:ratio:final" or "e1,e2,..." into a strictly decreasing schedule.
std::vector<double> parse_schedule(const std::string& text);
// Comma-separated numbers; throws ConfigError on junk.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace qcopies

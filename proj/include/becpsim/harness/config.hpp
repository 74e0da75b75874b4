#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "becpsim/types.hpp"

namespace becpsim::harness {

enum class Protocol { Becp, Avalanche, Paxos, Raft, Pbft };

const char* to_string(Protocol p);
// Throws std::invalid_argument for unknown names.
Protocol parse_protocol(std::string_view name);

/// One simulation run. Defaults are the experiment settings used throughout.
struct SimConfig {
  Protocol protocol = Protocol::Becp;
  std::size_t n = 500;
  Seconds duration_s = 600.0;
  std::uint64_t seed = 1;

  Seconds cycle_s = 0.7;
  Seconds d1_s = 0.1;
  Seconds t_block_s = 10.0;
  double p_block = 0.05;
  double epsilon1 = 0.01;
  int psi = 3;
  std::size_t n_cache = 50;
  std::size_t k = 10;
  double alpha = 0.8;
  int beta1 = 50;
  int beta2 = 150;
  Seconds timeout_min_s = 1.0;
  Seconds timeout_max_s = 1.2;
  Seconds latency_min_s = 0.01;
  Seconds latency_max_s = 0.3;

  // Throws std::invalid_argument describing the first bad field.
  void validate() const;

  // Names of explicitly set fields that `protocol` does not use.
  std::vector<std::string> irrelevant(const std::vector<std::string>& set_fields) const;
};

/// Applies key=value pairs (keys as in the CLI, without dashes). Returns the keys applied.
/// Throws std::invalid_argument on unknown keys or unparsable values.
std::vector<std::string> apply_settings(SimConfig& config, const std::map<std::string, std::string>& settings);

/// Parses a flat key=value file; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_settings_file(const std::string& path);

} // namespace becpsim::harness

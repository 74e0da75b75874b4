#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"

namespace becpsim::harness {

/// One config per seed in [first, first + count), all other fields copied from `base`.
std::vector<SimConfig> seed_range(const SimConfig& base, std::uint64_t first, std::uint64_t count);

/// Parses "a-b" (inclusive) or a bare count N meaning N seeds from `first`.
/// Returns {first seed, count}; throws std::invalid_argument on malformed input.
std::pair<std::uint64_t, std::uint64_t> parse_seeds(std::string_view text, std::uint64_t first);

/// Means across runs, as plotted per N.
struct SweepMeans {
  std::size_t runs = 0;
  double confirmed_items = 0.0;
  double messages_sent = 0.0;
  double avg_latency_s = 0.0;  // mean of per-run averages
};
SweepMeans mean_over(const std::vector<ExperimentReport>& reports);

/// Runs every config one after another. Reference for run_sweep.
std::vector<ExperimentReport> run_sweep_serial(const std::vector<SimConfig>& configs);

/// Runs configs concurrently (OpenMP). Each run is independent and seeded,
/// so the result equals run_sweep_serial element for element.
std::vector<ExperimentReport> run_sweep(const std::vector<SimConfig>& configs);

} // namespace becpsim::harness

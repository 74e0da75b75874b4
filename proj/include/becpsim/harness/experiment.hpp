#pragma once

#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"

namespace becpsim::harness {

/// Validates the config and performs one deterministic run of the selected protocol.
ExperimentReport run_experiment(const SimConfig& config);

} // namespace becpsim::harness

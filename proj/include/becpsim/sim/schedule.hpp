#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "becpsim/types.hpp"

namespace becpsim::sim {

/// First activation of a cyclic node: node i starts at d1 * (i mod ceil(cycle / d1)),
/// spreading initial proposals across one cycle.
inline Seconds staggered_start(NodeId id, Seconds cycle_s, Seconds d1_s) {
  const auto slots = static_cast<std::uint64_t>(std::ceil(cycle_s / d1_s - 1e-9));
  return d1_s * static_cast<double>(id % std::max<std::uint64_t>(slots, 1));
}

/// Cycle-driven block generation: an attempt is due once T_block has elapsed since the last one.
inline bool generation_due(Seconds now, Seconds last_attempt, Seconds t_block_s) {
  return now - last_attempt >= t_block_s - 1e-9;
}

} // namespace becpsim::sim

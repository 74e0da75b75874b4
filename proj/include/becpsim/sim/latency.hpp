#pragma once

#include "becpsim/sim/rng.hpp"
#include "becpsim/types.hpp"

namespace becpsim::sim {

/// Uniform one-way WAN delay in [min_s, max_s).
struct LatencyModel {
  Seconds min_s = 0.01;
  Seconds max_s = 0.3;

  // Throws std::invalid_argument unless 0 <= min_s < max_s.
  void validate() const;

  Seconds sample(Rng& rng) const;
};

} // namespace becpsim::sim

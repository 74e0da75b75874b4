#include "becpsim/sim/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace becpsim::sim {

void LatencyModel::validate() const {
  if (!(min_s >= 0.0) || !(max_s > min_s)) {
    throw std::invalid_argument("latency range must satisfy 0 <= min < max");
  }
}

Seconds LatencyModel::sample(Rng& rng) const {
  const Seconds d = uniform(rng, min_s, max_s);
  // Rounding in lo + (hi - lo) * u can land on max_s for u close to 1.
  return d < max_s ? d : std::nextafter(max_s, min_s);
}

} // namespace becpsim::sim

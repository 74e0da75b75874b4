#pragma once

#include <cstdint>
#include <limits>

#include "becpsim/chain/block.hpp"

namespace becpsim::protocol {

enum class Phase : std::uint8_t { Propagation, Agreement, Commit };

const char* to_string(Phase phase);

/// Push-sum pairs of one block: (vp, wp) counts informed nodes, (va, wa) counts agreeing nodes.
struct Pairs {
  double vp = 0.0;
  double wp = 0.0;
  double va = 0.0;
  double wa = 0.0;

  Pairs& operator+=(const Pairs& o) {
    vp += o.vp;
    wp += o.wp;
    va += o.va;
    wa += o.wa;
    return *this;
  }

  // Keeps half locally and returns the other half.
  Pairs split() {
    vp *= 0.5;
    wp *= 0.5;
    va *= 0.5;
    wa *= 0.5;
    return *this;
  }

  friend bool operator==(const Pairs&, const Pairs&) = default;
};

/// One entry of a node's block cache.
struct BlockTuple {
  chain::BlockUid block = chain::kNoBlock;
  Pairs mass;
  Phase phase = Phase::Propagation;
  double prev_estimate = std::numeric_limits<double>::quiet_NaN();
  int stable_cycles = 0;
  bool agreed = false;  // this node's +1 is already in va

  bool confirmed() const { return phase == Phase::Commit; }
};

/// Wire form of a tuple inside a cycle message.
struct TupleSummary {
  chain::BlockUid block = chain::kNoBlock;
  Pairs mass;
  Phase phase = Phase::Propagation;
};

/// Receives mass entering or leaving the aggregation, for conservation accounting.
class MassObserver {
 public:
  virtual ~MassObserver() = default;
  virtual void contributed(chain::BlockUid block, const Pairs& mass) = 0;
  virtual void discarded(chain::BlockUid block, const Pairs& mass) = 0;
};

} // namespace becpsim::protocol

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "becpsim/types.hpp"

namespace becpsim::chain {

using BlockUid = std::uint32_t;
using Height = std::int64_t;

inline constexpr BlockUid kNoBlock = std::numeric_limits<BlockUid>::max();
inline constexpr BlockUid kGenesis = 0;

// Immutable once created. `uid` is the run-wide handle standing in for the block hash;
// parent refers to the parent's uid.
struct Block {
  BlockUid uid = kNoBlock;
  Height height = 0;
  NodeId origin = 0;
  Seconds created = 0.0;
  BlockUid parent = kNoBlock;
};

/// Candidate ordering at one height: earlier creation wins, ties go to the lower originator.
inline bool precedes(const Block& a, const Block& b) {
  return a.created < b.created || (a.created == b.created && a.origin < b.origin);
}

/// Append-only registry of every block created during a run. Slot 0 is the genesis block.
class BlockStore {
 public:
  BlockStore();

  BlockUid create(Height height, NodeId origin, Seconds created, BlockUid parent);

  const Block& operator[](BlockUid uid) const { return blocks_[uid]; }
  std::size_t size() const { return blocks_.size(); }

 private:
  std::vector<Block> blocks_;
};

} // namespace becpsim::chain

#include "becpsim/chain/block.hpp"

#include <stdexcept>

namespace becpsim::chain {

BlockStore::BlockStore() { blocks_.push_back(Block{kGenesis, 0, 0, 0.0, kNoBlock}); }

BlockUid BlockStore::create(Height height, NodeId origin, Seconds created, BlockUid parent) {
  if (parent >= blocks_.size() || blocks_[parent].height + 1 != height) {
    throw std::logic_error("block height must be parent height + 1");
  }
  const auto uid = static_cast<BlockUid>(blocks_.size());
  blocks_.push_back(Block{uid, height, origin, created, parent});
  return uid;
}

} // namespace becpsim::chain

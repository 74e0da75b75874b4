#pragma once

#include <vector>

#include "becpsim/chain/block.hpp"

namespace becpsim::protocol {

/// Discards `root` and, depth first, every block reachable through children_of.
/// Children are removed before their parent. Returns the removed uids in removal order.
template <class ChildrenOf, class Remove>
void backward(chain::BlockUid root, ChildrenOf&& children_of, Remove&& remove) {
  for (chain::BlockUid child : children_of(root)) {
    backward(child, children_of, remove);
  }
  remove(root);
}

} // namespace becpsim::protocol

#pragma once

#include <optional>
#include <vector>

#include "becpsim/chain/block.hpp"
#include "becpsim/protocol/tuple.hpp"

namespace becpsim::protocol {

enum class Resolution {
  Merged,            // same block: pairs added onto the local tuple
  Replaced,          // better candidate: local tuple and descendants discarded
  Admitted,          // new height extending the preferred block
  DroppedWorse,      // loses the (t, o) comparison
  DroppedConfirmed,  // height already confirmed locally
  DroppedDetached,   // parent is not the local block below it
};

const char* to_string(Resolution r);

struct PtpParams {
  double epsilon1 = 0.01;
  int psi = 3;
  // Estimate must reach this fraction of the system size before a phase advances.
  double quorum_fraction = 0.5;
};

/// A node's block cache C_b and preferred block B_pref.
///
/// Confirmed tuples form the chain from genesis; unconfirmed tuples form one chain
/// on top of it, one per height. B_pref is always the tip of that combined chain,
/// so there is exactly one preferred block at all times.
class BlockCache {
 public:
  explicit BlockCache(const chain::BlockStore& store, MassObserver* observer = nullptr);

  chain::BlockUid preferred() const;
  chain::Height preferred_height() const;
  chain::Height confirmed_height() const { return static_cast<chain::Height>(confirmed_.size()) - 1; }

  const std::vector<BlockTuple>& confirmed() const { return confirmed_; }
  const std::vector<BlockTuple>& pending() const { return pending_; }
  const BlockTuple* find(chain::BlockUid block) const;
  std::size_t size() const { return confirmed_.size() + pending_.size(); }

  /// Handles one incoming tuple of a cycle message.
  Resolution resolve(const TupleSummary& incoming);

  /// Removes an unconfirmed block and all of its descendants. Returns removed uids.
  std::vector<chain::BlockUid> backward(chain::BlockUid block);

  /// Creates a block on top of B_pref unless this node already has one at that height.
  std::optional<chain::BlockUid> generate(NodeId self, Seconds now, chain::BlockStore& store);

  /// Halves every unconfirmed tuple, appending the halves to `out`.
  void split_for_send(std::vector<TupleSummary>& out);

  /// Once-per-cycle convergence check. Newly confirmed blocks are appended to
  /// `committed` in height order, ancestors first.
  void update_states(std::optional<double> system_size, const PtpParams& params,
                     std::vector<chain::BlockUid>& committed);

 private:
  const chain::Block& block(chain::BlockUid uid) const { return (*store_)[uid]; }
  BlockTuple* pending_at(chain::Height h);
  void admit(const TupleSummary& incoming);
  void contribute(chain::BlockUid b, const Pairs& m) {
    if (observer_) observer_->contributed(b, m);
  }
  void discard(chain::BlockUid b, const Pairs& m) {
    if (observer_) observer_->discarded(b, m);
  }

  const chain::BlockStore* store_;
  MassObserver* observer_;
  std::vector<BlockTuple> confirmed_;  // index == height, genesis first
  std::vector<BlockTuple> pending_;    // pending_[i] sits at height confirmed_height() + 1 + i
};

} // namespace becpsim::protocol

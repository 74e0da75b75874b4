#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "becpsim/chain/block.hpp"
#include "becpsim/chain/commit_ledger.hpp"
#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"
#include "becpsim/sim/rng.hpp"

namespace becpsim::baseline {

inline std::size_t majority(std::size_t n) { return n / 2 + 1; }

/// Shared bookkeeping for the single-proposer protocols (Paxos, Raft, PBFT):
/// one instance in flight, and the next proposal is due T_block after the
/// current block is confirmed at a majority of nodes.
class LeaderRounds {
 public:
  LeaderRounds(const harness::SimConfig& config, chain::BlockStore& store);

  // Records a commit; returns true exactly when the block reaches majority confirmation.
  bool confirm(NodeId node, chain::BlockUid block, Seconds now);

  chain::BlockUid propose(NodeId leader, Seconds now);
  chain::BlockUid tip() const { return tip_; }
  chain::Height next_height() const { return (*store_)[tip_].height + 1; }

  const chain::CommitLedger& ledger() const { return ledger_; }
  harness::ExperimentReport report(harness::Protocol protocol, std::uint64_t messages) const;

 private:
  const harness::SimConfig* config_;
  chain::BlockStore* store_;
  chain::CommitLedger ledger_;
  chain::BlockUid tip_ = chain::kGenesis;  // last block proposed
  chain::BlockUid counting_ = chain::kNoBlock;
  std::size_t confirmations_ = 0;
};

} // namespace becpsim::baseline

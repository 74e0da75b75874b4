#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "becpsim/chain/block.hpp"

namespace becpsim::chain {

/// Observes every (node, block) commit of a run. Collects latency samples and
/// checks agreement and chain integrity as commits happen:
///  - one block per height network-wide,
///  - each node commits heights in order and every block extends the previous one.
class CommitLedger {
 public:
  CommitLedger(std::size_t nodes, const BlockStore& store);

  void record(NodeId node, BlockUid block, Seconds at);

  // Distinct blocks confirmed anywhere (genesis excluded).
  std::size_t confirmed_items() const { return first_commit_.size(); }
  std::size_t longest_chain() const;
  const std::vector<double>& latencies() const { return latencies_; }
  const std::vector<BlockUid>& chain(NodeId node) const { return chains_[node]; }
  std::vector<std::uint64_t> chain_digests() const;

  void flag(std::string violation);
  // First few messages are kept; the count covers all of them.
  const std::vector<std::string>& violations() const { return violations_; }
  std::size_t violation_count() const { return violation_count_; }

 private:
  const BlockStore* store_;
  std::vector<std::vector<BlockUid>> chains_;  // excluding genesis
  std::vector<BlockUid> first_commit_;         // by height - 1
  std::vector<double> latencies_;
  std::vector<std::string> violations_;
  std::size_t violation_count_ = 0;
};

} // namespace becpsim::chain

#include "becpsim/chain/commit_ledger.hpp"

#include <algorithm>

namespace becpsim::chain {

namespace {
constexpr std::size_t kMaxViolations = 32;
}

CommitLedger::CommitLedger(std::size_t nodes, const BlockStore& store) : store_(&store), chains_(nodes) {}

void CommitLedger::record(NodeId node, BlockUid uid, Seconds at) {
  const Block& block = (*store_)[uid];
  auto& chain = chains_[node];
  const BlockUid expected_parent = chain.empty() ? kGenesis : chain.back();
  if (block.height != static_cast<Height>(chain.size()) + 1 || block.parent != expected_parent) {
    flag("node " + std::to_string(node) + " committed block " + std::to_string(uid) + " at height " +
         std::to_string(block.height) + " not extending its chain of length " + std::to_string(chain.size()));
  }
  const auto index = static_cast<std::size_t>(block.height - 1);
  if (index == first_commit_.size()) {
    first_commit_.push_back(uid);
  } else if (index < first_commit_.size() && first_commit_[index] != uid) {
    flag("conflicting commits at height " + std::to_string(block.height) + ": blocks " +
         std::to_string(first_commit_[index]) + " and " + std::to_string(uid));
  } else if (index > first_commit_.size()) {
    flag("height gap at " + std::to_string(block.height));
  }
  chain.push_back(uid);
  latencies_.push_back(at - block.created);
}

std::size_t CommitLedger::longest_chain() const {
  std::size_t best = 0;
  for (const auto& c : chains_) best = std::max(best, c.size());
  return best;
}

std::vector<std::uint64_t> CommitLedger::chain_digests() const {
  std::vector<std::uint64_t> out;
  out.reserve(chains_.size());
  for (const auto& chain : chains_) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the uid sequence
    for (BlockUid uid : chain) {
      for (int b = 0; b < 4; ++b) {
        h ^= (uid >> (8 * b)) & 0xFF;
        h *= 0x100000001b3ULL;
      }
    }
    out.push_back(h);
  }
  return out;
}

void CommitLedger::flag(std::string violation) {
  ++violation_count_;
  if (violations_.size() < kMaxViolations) violations_.push_back(std::move(violation));
}

} // namespace becpsim::chain

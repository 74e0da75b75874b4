#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "becpsim/sim/rng.hpp"
#include "becpsim/types.hpp"

namespace becpsim::membership {

/// Bounded random view of the membership held by one node (Node Cache Protocol).
/// Never contains the owner and never exceeds its capacity.
class PeerCache {
 public:
  PeerCache(NodeId self, std::size_t capacity);

  NodeId self() const { return self_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<NodeId>& entries() const { return entries_; }
  bool contains(NodeId node) const;

  // Adds a peer if there is room; self and duplicates are ignored.
  bool insert(NodeId node);

  /// getRandomNode(): a uniformly chosen entry, or nullopt for an isolated node.
  std::optional<NodeId> random_node(sim::Rng& rng) const;

  // Up to `count` distinct entries drawn uniformly, for piggybacking on a message.
  std::vector<NodeId> sample(std::size_t count, sim::Rng& rng) const;

  // In-place exchange: keep a uniform subset of local ∪ received ∪ {sender}.
  void merge(std::span<const NodeId> received, NodeId sender, sim::Rng& rng);

 private:
  NodeId self_;
  std::size_t capacity_;
  std::vector<NodeId> entries_;
};

/// Peers piggybacked on each cycle message.
inline constexpr std::size_t kExchangeLength = 8;

/// One cache per node, each holding min(capacity, n - 1) distinct uniform peers.
/// Throws std::invalid_argument for capacity 0 with more than one node.
std::vector<PeerCache> bootstrap(std::size_t n, std::size_t capacity, sim::Rng& rng);

/// Pure form of PeerCache::merge.
PeerCache ncp_exchange(const PeerCache& local, std::span<const NodeId> received, NodeId sender,
                       sim::Rng& rng);

} // namespace becpsim::membership

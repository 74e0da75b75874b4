#include "becpsim/membership/peer_cache.hpp"

#include <algorithm>
#include <stdexcept>

namespace becpsim::membership {

PeerCache::PeerCache(NodeId self, std::size_t capacity) : self_(self), capacity_(capacity) {
  entries_.reserve(capacity);
}

bool PeerCache::contains(NodeId node) const {
  return std::find(entries_.begin(), entries_.end(), node) != entries_.end();
}

bool PeerCache::insert(NodeId node) {
  if (node == self_ || entries_.size() >= capacity_ || contains(node)) return false;
  entries_.push_back(node);
  return true;
}

std::optional<NodeId> PeerCache::random_node(sim::Rng& rng) const {
  if (entries_.empty()) return std::nullopt;
  return entries_[sim::uniform_index(rng, entries_.size())];
}

std::vector<NodeId> PeerCache::sample(std::size_t count, sim::Rng& rng) const {
  std::vector<NodeId> pool = entries_;
  const std::size_t k = std::min(count, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + sim::uniform_index(rng, pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

void PeerCache::merge(std::span<const NodeId> received, NodeId sender, sim::Rng& rng) {
  std::vector<NodeId> merged = entries_;
  auto add = [&](NodeId n) {
    if (n != self_ && std::find(merged.begin(), merged.end(), n) == merged.end()) merged.push_back(n);
  };
  for (NodeId n : received) add(n);
  add(sender);

  if (merged.size() > capacity_) {
    // Partial Fisher-Yates: the first `capacity_` slots become a uniform subset.
    for (std::size_t i = 0; i < capacity_; ++i) {
      std::swap(merged[i], merged[i + sim::uniform_index(rng, merged.size() - i)]);
    }
    merged.resize(capacity_);
  }
  entries_ = std::move(merged);
}

std::vector<PeerCache> bootstrap(std::size_t n, std::size_t capacity, sim::Rng& rng) {
  if (capacity == 0 && n > 1) {
    throw std::invalid_argument("peer cache capacity must be positive when n > 1");
  }
  std::vector<PeerCache> caches;
  caches.reserve(n);
  const std::size_t want = n == 0 ? 0 : std::min(capacity, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    PeerCache cache(static_cast<NodeId>(i), capacity);
    if (want * 2 >= n) {
      std::vector<NodeId> others;
      others.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others.push_back(static_cast<NodeId>(j));
      }
      for (std::size_t k = 0; k < want; ++k) {
        std::swap(others[k], others[k + sim::uniform_index(rng, others.size() - k)]);
        cache.insert(others[k]);
      }
    } else {
      while (cache.size() < want) cache.insert(static_cast<NodeId>(sim::uniform_index(rng, n)));
    }
    caches.push_back(std::move(cache));
  }
  return caches;
}

PeerCache ncp_exchange(const PeerCache& local, std::span<const NodeId> received, NodeId sender,
                       sim::Rng& rng) {
  PeerCache out = local;
  out.merge(received, sender, rng);
  return out;
}

} // namespace becpsim::membership

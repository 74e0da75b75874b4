#include "becpsim/protocol/block_cache.hpp"

#include <algorithm>
#include <cmath>

#include "becpsim/protocol/backward.hpp"

namespace becpsim::protocol {

using chain::BlockUid;
using chain::Height;

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::Propagation: return "propagation";
    case Phase::Agreement: return "agreement";
    case Phase::Commit: return "commit";
  }
  return "?";
}

const char* to_string(Resolution r) {
  switch (r) {
    case Resolution::Merged: return "merged";
    case Resolution::Replaced: return "replaced";
    case Resolution::Admitted: return "admitted";
    case Resolution::DroppedWorse: return "dropped-worse";
    case Resolution::DroppedConfirmed: return "dropped-confirmed";
    case Resolution::DroppedDetached: return "dropped-detached";
  }
  return "?";
}

BlockCache::BlockCache(const chain::BlockStore& store, MassObserver* observer)
    : store_(&store), observer_(observer) {
  BlockTuple genesis;
  genesis.block = chain::kGenesis;
  genesis.phase = Phase::Commit;
  confirmed_.push_back(genesis);
}

BlockUid BlockCache::preferred() const {
  return pending_.empty() ? confirmed_.back().block : pending_.back().block;
}

Height BlockCache::preferred_height() const {
  return confirmed_height() + static_cast<Height>(pending_.size());
}

const BlockTuple* BlockCache::find(BlockUid uid) const {
  const Height h = block(uid).height;
  if (h <= confirmed_height()) {
    const auto& t = confirmed_[static_cast<std::size_t>(h)];
    return t.block == uid ? &t : nullptr;
  }
  const auto i = static_cast<std::size_t>(h - confirmed_height() - 1);
  if (i < pending_.size() && pending_[i].block == uid) return &pending_[i];
  return nullptr;
}

BlockTuple* BlockCache::pending_at(Height h) {
  if (h <= confirmed_height()) return nullptr;
  const auto i = static_cast<std::size_t>(h - confirmed_height() - 1);
  return i < pending_.size() ? &pending_[i] : nullptr;
}

void BlockCache::admit(const TupleSummary& incoming) {
  BlockTuple t;
  t.block = incoming.block;
  t.mass = incoming.mass;
  t.phase = incoming.phase;
  Pairs own{1.0, 0.0, 0.0, 0.0};
  if (t.phase == Phase::Agreement) {
    own.va = 1.0;
    t.agreed = true;
  }
  t.mass += own;
  contribute(t.block, own);
  pending_.push_back(t);
}

Resolution BlockCache::resolve(const TupleSummary& incoming) {
  const chain::Block& in = block(incoming.block);

  if (in.height <= confirmed_height()) {
    discard(incoming.block, incoming.mass);
    return Resolution::DroppedConfirmed;
  }

  if (BlockTuple* local = pending_at(in.height)) {
    if (local->block == incoming.block) {
      local->mass += incoming.mass;
      return Resolution::Merged;
    }
    const chain::Block& mine = block(local->block);
    if (chain::precedes(in, mine) && in.parent == mine.parent) {
      backward(local->block);
      admit(incoming);
      return Resolution::Replaced;
    }
    discard(incoming.block, incoming.mass);
    return chain::precedes(in, mine) ? Resolution::DroppedDetached : Resolution::DroppedWorse;
  }

  if (in.parent == preferred()) {
    admit(incoming);
    return Resolution::Admitted;
  }
  discard(incoming.block, incoming.mass);
  return Resolution::DroppedDetached;
}

std::vector<BlockUid> BlockCache::backward(BlockUid root) {
  std::vector<BlockUid> removed;
  auto children_of = [this](BlockUid uid) {
    std::vector<BlockUid> kids;
    for (const auto& t : pending_) {
      if (block(t.block).parent == uid) kids.push_back(t.block);
    }
    return kids;
  };
  auto remove = [this, &removed](BlockUid uid) {
    auto it = std::find_if(pending_.begin(), pending_.end(), [uid](const BlockTuple& t) { return t.block == uid; });
    if (it == pending_.end()) return;
    discard(uid, it->mass);
    pending_.erase(it);
    removed.push_back(uid);
  };
  protocol::backward(root, children_of, remove);
  return removed;
}

std::optional<BlockUid> BlockCache::generate(NodeId self, Seconds now, chain::BlockStore& store) {
  const BlockUid parent = preferred();
  const Height next = block(parent).height + 1;
  if (pending_at(next) != nullptr) return std::nullopt;

  const BlockUid uid = store.create(next, self, now, parent);
  BlockTuple t;
  t.block = uid;
  t.mass = Pairs{1.0, 1.0, 0.0, 1.0};
  contribute(uid, t.mass);
  pending_.push_back(t);
  return uid;
}

void BlockCache::split_for_send(std::vector<TupleSummary>& out) {
  for (auto& t : pending_) {
    out.push_back(TupleSummary{t.block, t.mass.split(), t.phase});
  }
}

void BlockCache::update_states(std::optional<double> system_size, const PtpParams& params,
                               std::vector<BlockUid>& committed) {
  constexpr double kTiny = 1e-12;
  std::ptrdiff_t commit_upto = -1;

  for (std::size_t i = 0; i < pending_.size(); ++i) {
    BlockTuple& t = pending_[i];
    const bool propagating = t.phase == Phase::Propagation;
    const double num = propagating ? t.mass.vp : t.mass.va;
    const double den = propagating ? t.mass.wp : t.mass.wa;
    if (!(den > 0.0)) {
      t.stable_cycles = 0;
      t.prev_estimate = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double e = num / den;
    if (!std::isnan(t.prev_estimate) && std::abs(e - t.prev_estimate) / std::max(e, kTiny) < params.epsilon1) {
      ++t.stable_cycles;
    } else {
      t.stable_cycles = 0;
    }
    t.prev_estimate = e;

    if (t.stable_cycles < params.psi || !system_size || e < params.quorum_fraction * *system_size) continue;

    if (propagating) {
      t.phase = Phase::Agreement;
      t.stable_cycles = 0;
      t.prev_estimate = std::numeric_limits<double>::quiet_NaN();
      if (!t.agreed) {
        t.agreed = true;
        const Pairs own{0.0, 0.0, 1.0, 0.0};
        t.mass += own;
        contribute(t.block, own);
      }
    } else {
      commit_upto = static_cast<std::ptrdiff_t>(i);
    }
  }

  for (std::ptrdiff_t i = 0; i <= commit_upto; ++i) {
    BlockTuple t = pending_[static_cast<std::size_t>(i)];
    t.phase = Phase::Commit;
    confirmed_.push_back(t);
    committed.push_back(t.block);
  }
  if (commit_upto >= 0) pending_.erase(pending_.begin(), pending_.begin() + commit_upto + 1);
}

} // namespace becpsim::protocol

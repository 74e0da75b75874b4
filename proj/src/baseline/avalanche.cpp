#include "becpsim/baseline/avalanche.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "becpsim/sim/schedule.hpp"

namespace becpsim::baseline {

using chain::BlockUid;
using chain::Height;
using chain::kNoBlock;

bool SnowballState::add(BlockUid block) {
  if (std::find(candidates.begin(), candidates.end(), block) != candidates.end()) return false;
  candidates.push_back(block);
  confidence.push_back(0);
  return true;
}

int SnowballState::confidence_of(BlockUid block) const {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == block) return confidence[i];
  }
  return 0;
}

void SnowballState::record_poll(BlockUid winner) {
  if (winner == kNoBlock) {
    consecutive = 0;
    return;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == winner) ++confidence[i];
  }
  if (winner == last_winner) {
    ++consecutive;
  } else {
    last_winner = winner;
    consecutive = 1;
  }
}

AvalancheSimulation::AvalancheSimulation(const harness::SimConfig& config)
    : config_(config),
      ledger_(config.n, store_),
      network_(queue_, sim::LatencyModel{config.latency_min_s, config.latency_max_s}) {
  nodes_.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    Node& n = nodes_[i];
    n.id = static_cast<NodeId>(i);
    n.rng = sim::node_stream(config.seed, n.id);
    n.last_gen_attempt = -std::numeric_limits<double>::infinity();
    n.decided.push_back(chain::kGenesis);
    queue_.schedule(sim::staggered_start(n.id, config.cycle_s, config.d1_s), n.id, Payload{Kind::Cycle, 0});
  }
}

std::size_t AvalancheSimulation::quorum() const {
  return static_cast<std::size_t>(std::ceil(config_.alpha * static_cast<double>(config_.k) - 1e-9));
}

void AvalancheSimulation::run_until(Seconds end) {
  sim::run_until(queue_, end, [this](const auto& e) {
    Node& node = nodes_[e.target];
    switch (e.payload.kind) {
      case Kind::Cycle: on_cycle(node); break;
      case Kind::Query: on_query(node, e.payload.slot); break;
      case Kind::Response: on_response(node, e.payload.slot); break;
    }
  });
}

Height AvalancheSimulation::decided_height(const Node& node) const {
  return static_cast<Height>(node.decided.size()) - 1;
}

void AvalancheSimulation::learn(Node& node, BlockUid block) {
  const Height h = store_[block].height;
  if (h <= decided_height(node)) return;
  const auto i = static_cast<std::size_t>(h - decided_height(node) - 1);
  if (node.open.size() <= i) node.open.resize(i + 1);
  node.open[i].add(block);
}

void AvalancheSimulation::preferred_chain(const Node& node, Height from, std::vector<BlockUid>& out) const {
  for (Height h = std::max<Height>(from, 1); h <= decided_height(node); ++h) {
    out.push_back(node.decided[static_cast<std::size_t>(h)]);
  }
  BlockUid parent = node.decided.back();
  Height h = decided_height(node);
  for (const SnowballState& s : node.open) {
    ++h;
    // Highest confidence among children of the preferred parent; ties go to the earlier block.
    BlockUid best = kNoBlock;
    int best_conf = -1;
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
      const chain::Block& b = store_[s.candidates[i]];
      if (b.parent != parent) continue;
      if (s.confidence[i] > best_conf || (s.confidence[i] == best_conf && chain::precedes(b, store_[best]))) {
        best = b.uid;
        best_conf = s.confidence[i];
      }
    }
    if (best == kNoBlock) break;
    if (h >= from) out.push_back(best);
    parent = best;
  }
}

BlockUid AvalancheSimulation::preferred_tip(const Node& node) const {
  std::vector<BlockUid> chain;
  preferred_chain(node, decided_height(node) + 1, chain);
  return chain.empty() ? node.decided.back() : chain.back();
}

void AvalancheSimulation::send_chain(Node& from, NodeId to, Kind kind, std::uint64_t poll, Height base) {
  const std::uint32_t slot = pool_.acquire();
  Message& m = pool_[slot];
  m.from = from.id;
  m.poll = poll;
  m.base = base;
  m.chain.clear();
  preferred_chain(from, base, m.chain);
  network_.send(to, Payload{kind, slot}, from.rng);
}

void AvalancheSimulation::on_cycle(Node& node) {
  const Seconds now = queue_.now();
  queue_.schedule(now + config_.cycle_s, node.id, Payload{Kind::Cycle, 0});

  if (config_.n > 1) start_poll(node);

  // Generated after polling, so a new block is first advertised on the next cycle.
  if (sim::generation_due(now, node.last_gen_attempt, config_.t_block_s)) {
    node.last_gen_attempt = now;
    if (sim::bernoulli(node.rng, config_.p_block)) {
      const BlockUid parent = preferred_tip(node);
      learn(node, store_.create(store_[parent].height + 1, node.id, now, parent));
    }
  }
}

void AvalancheSimulation::start_poll(Node& node) {
  // A poll still missing responses is abandoned; with RTT below one cycle this does not occur.
  node.polling = true;
  ++node.poll;
  node.responses = 0;
  node.poll_base = decided_height(node) + 1;
  node.tally.clear();

  // K distinct peers when there are enough of them, otherwise with replacement.
  const std::size_t peers = config_.n - 1;
  sample_.clear();
  while (sample_.size() < config_.k) {
    auto peer = static_cast<NodeId>(sim::uniform_index(node.rng, peers));
    if (peer >= node.id) ++peer;
    if (peers >= config_.k && std::find(sample_.begin(), sample_.end(), peer) != sample_.end()) continue;
    sample_.push_back(peer);
  }
  for (NodeId peer : sample_) send_chain(node, peer, Kind::Query, node.poll, node.poll_base);
}

void AvalancheSimulation::on_query(Node& node, std::uint32_t slot) {
  const Message& q = pool_[slot];
  for (BlockUid b : q.chain) learn(node, b);
  const NodeId to = q.from;
  const std::uint64_t poll = q.poll;
  const Height base = q.base;
  pool_.release(slot);
  send_chain(node, to, Kind::Response, poll, base);
}

void AvalancheSimulation::on_response(Node& node, std::uint32_t slot) {
  const Message& r = pool_[slot];
  if (node.polling && r.poll == node.poll) {
    if (node.tally.size() < r.chain.size()) node.tally.resize(r.chain.size());
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
      learn(node, r.chain[i]);
      auto& votes = node.tally[i].votes;
      auto it = std::find_if(votes.begin(), votes.end(), [&](const auto& v) { return v.first == r.chain[i]; });
      if (it == votes.end()) {
        votes.emplace_back(r.chain[i], 1);
      } else {
        ++it->second;
      }
    }
    if (++node.responses == config_.k) finish_poll(node);
  } else {
    for (BlockUid b : r.chain) learn(node, b);
  }
  pool_.release(slot);
}

void AvalancheSimulation::finish_poll(Node& node) {
  node.polling = false;
  const std::size_t needed = quorum();
  const Height first_open = decided_height(node) + 1;

  for (std::size_t i = 0; i < node.open.size(); ++i) {
    const Height h = first_open + static_cast<Height>(i);
    BlockUid winner = kNoBlock;
    const auto t = static_cast<std::size_t>(h - node.poll_base);
    if (h >= node.poll_base && t < node.tally.size()) {
      for (const auto& [block, count] : node.tally[t].votes) {
        if (static_cast<std::size_t>(count) >= needed) winner = block;
      }
    }
    node.open[i].record_poll(winner);
  }

  while (!node.open.empty()) {
    const SnowballState& s = node.open.front();
    const int threshold = s.conflicted() ? config_.beta2 : config_.beta1;
    if (s.consecutive < threshold || s.last_winner == kNoBlock) break;
    const BlockUid winner = s.last_winner;
    if (store_[winner].parent != node.decided.back()) break;
    node.decided.push_back(winner);
    node.open.erase(node.open.begin());
    ledger_.record(node.id, winner, queue_.now());
  }
}

harness::ExperimentReport AvalancheSimulation::report() const {
  harness::ExperimentReport r;
  r.protocol = harness::Protocol::Avalanche;
  r.n = config_.n;
  r.seed = config_.seed;
  r.duration_s = config_.duration_s;
  r.confirmed_items = ledger_.confirmed_items();
  r.messages_sent = network_.sent();
  r.latency_samples = ledger_.latencies();
  r.chain_digests = ledger_.chain_digests();
  r.safety_violation_count = ledger_.violation_count();
  r.safety_violations = ledger_.violations();
  return r;
}

} // namespace becpsim::baseline

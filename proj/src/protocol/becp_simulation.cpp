#include "becpsim/protocol/becp_simulation.hpp"

#include "becpsim/sim/schedule.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>

namespace becpsim::protocol {

namespace {

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
}

double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

} // namespace

BecpSimulation::BecpSimulation(const harness::SimConfig& config)
    : config_(config),
      ptp_{config.epsilon1, config.psi, 0.5},
      ledger_(config.n, store_),
      network_(queue_, sim::LatencyModel{config.latency_min_s, config.latency_max_s}) {
  sim::Rng membership_rng = sim::make_stream(config.seed, sim::kMembershipStream);
  auto caches = membership::bootstrap(config.n, config.n_cache, membership_rng);

  nodes_.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    const auto id = static_cast<NodeId>(i);
    nodes_.push_back(BecpNode{id, BlockCache(store_, this),
                              i == 0 ? SizeEstimator::initiator() : SizeEstimator::member(),
                              std::move(caches[i]), -std::numeric_limits<double>::infinity(),
                              sim::node_stream(config.seed, id)});
    queue_.schedule(sim::staggered_start(id, config.cycle_s, config.d1_s), id, Payload{Kind::Cycle, 0});
  }
}

void BecpSimulation::run_until(Seconds end) {
  sim::run_until(queue_, end, [this](const sim::SimEvent<Payload>& e) {
    ++events_;
    fnv(trace_, std::bit_cast<std::uint64_t>(e.deliver_at));
    fnv(trace_, e.seq);
    fnv(trace_, (static_cast<std::uint64_t>(e.target) << 8) | static_cast<std::uint64_t>(e.payload.kind));
    BecpNode& node = nodes_[e.target];
    if (e.payload.kind == Kind::Cycle) {
      on_cycle(node);
    } else {
      on_deliver(node, e.payload.slot);
    }
  });
}

void BecpSimulation::on_cycle(BecpNode& node) {
  const Seconds now = queue_.now();

  committed_scratch_.clear();
  node.cache.update_states(node.ssep.estimate(), ptp_, committed_scratch_);
  for (chain::BlockUid uid : committed_scratch_) ledger_.record(node.id, uid, now);

  if (sim::generation_due(now, node.last_gen_attempt, config_.t_block_s)) {
    node.last_gen_attempt = now;
    if (sim::bernoulli(node.rng, config_.p_block)) node.cache.generate(node.id, now, store_);
  }

  if (auto peer = node.peers.random_node(node.rng)) send(node, *peer, false);

  queue_.schedule(now + config_.cycle_s, node.id, Payload{Kind::Cycle, 0});
}

void BecpSimulation::send(BecpNode& from, NodeId to, bool is_reply) {
  const std::uint32_t slot = pool_.acquire();
  CycleMessage& msg = pool_[slot];
  msg.sender = from.id;
  msg.is_reply = is_reply;
  const SizeEstimator half = from.ssep.split();
  msg.ssep_value = half.value;
  msg.ssep_weight = half.weight;
  msg.tuples.clear();
  from.cache.split_for_send(msg.tuples);
  msg.peers = from.peers.sample(membership::kExchangeLength, from.rng);
  network_.send(to, Payload{Kind::Deliver, slot}, from.rng);
}

void BecpSimulation::on_deliver(BecpNode& node, std::uint32_t slot) {
  ++deliveries_;
  // Push-pull: the reply carries the receiver's state from before the merge.
  if (!pool_[slot].is_reply) send(node, pool_[slot].sender, true);

  const CycleMessage& msg = pool_[slot];
  node.ssep.absorb(msg.ssep_value, msg.ssep_weight);
  node.peers.merge(msg.peers, msg.sender, node.rng);
  for (const TupleSummary& t : msg.tuples) node.cache.resolve(t);
  pool_.release(slot);
}

void BecpSimulation::contributed(chain::BlockUid block, const Pairs& mass) {
  if (contributed_.size() <= block) contributed_.resize(block + 1);
  contributed_[block] += mass;
}

void BecpSimulation::discarded(chain::BlockUid block, const Pairs& mass) {
  if (discarded_.size() <= block) discarded_.resize(block + 1);
  discarded_[block] += mass;
}

MassCensus BecpSimulation::census() const {
  std::vector<Pairs> held(store_.size());
  MassCensus out;
  for (const auto& node : nodes_) {
    for (const auto& t : node.cache.confirmed()) held[t.block] += t.mass;
    for (const auto& t : node.cache.pending()) held[t.block] += t.mass;
    out.ssep_value_total += node.ssep.value;
    out.ssep_weight_total += node.ssep.weight;
  }
  pool_.for_each_in_use([&](const CycleMessage& m) {
    for (const auto& t : m.tuples) held[t.block] += t.mass;
    out.ssep_value_total += m.ssep_value;
    out.ssep_weight_total += m.ssep_weight;
  });

  for (chain::BlockUid uid = 1; uid < store_.size(); ++uid) {
    Pairs total = held[uid];
    if (uid < discarded_.size()) total += discarded_[uid];
    const Pairs expected = uid < contributed_.size() ? contributed_[uid] : Pairs{};
    const double err = std::max({relative_error(total.vp, expected.vp), relative_error(total.wp, expected.wp),
                                 relative_error(total.va, expected.va), relative_error(total.wa, expected.wa)});
    ++out.blocks_checked;
    if (err > out.worst_relative_error) {
      out.worst_relative_error = err;
      out.worst_block = uid;
    }
  }
  return out;
}

harness::ExperimentReport BecpSimulation::report() const {
  harness::ExperimentReport r;
  r.protocol = harness::Protocol::Becp;
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

} // namespace becpsim::protocol

#include "becpsim/baseline/pbft.hpp"

namespace becpsim::baseline {

PbftSimulation::PbftSimulation(const harness::SimConfig& config)
    : config_(config),
      rounds_(config_, store_),
      network_(queue_, sim::LatencyModel{config.latency_min_s, config.latency_max_s}),
      replicas_(config.n) {
  rngs_.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) rngs_.push_back(sim::node_stream(config.seed, static_cast<NodeId>(i)));
  if (config.n > 0) queue_.schedule(config.t_block_s, kPrimary, Payload{Kind::Propose});
}

void PbftSimulation::run_until(Seconds end) {
  sim::run_until(queue_, end, [this](const auto& e) { handle(e.target, e.payload); });
}

void PbftSimulation::broadcast(NodeId from, Payload p) {
  p.from = from;
  for (NodeId to = 0; to < config_.n; ++to) {
    if (to != from) network_.send(to, p, rngs_[from]);
  }
}

PbftSimulation::Replica& PbftSimulation::replica(NodeId at, chain::BlockUid block) {
  Replica& r = replicas_[at];
  if (r.block != block) r = Replica{block};
  return r;
}

// Prepared needs the pre-prepare plus 2f + 1 prepares (own included); committed-local
// needs prepared plus 2f + 1 commits (own included).
void PbftSimulation::advance(NodeId at, Replica& r) {
  if (!r.prepared && r.pre_prepared && r.prepares >= quorum()) {
    r.prepared = true;
    ++r.commits;
    broadcast(at, Payload{Kind::Commit, at, r.block});
  }
  if (!r.committed && r.prepared && r.commits >= quorum()) {
    r.committed = true;
    if (rounds_.confirm(at, r.block, queue_.now())) {
      queue_.schedule(queue_.now() + config_.t_block_s, kPrimary, Payload{Kind::Propose});
    }
  }
}

void PbftSimulation::handle(NodeId at, const Payload& p) {
  // Messages for a finished instance can still be in flight when the next one starts.
  if (p.kind != Kind::Propose && p.block != rounds_.tip()) return;

  switch (p.kind) {
    case Kind::Propose: {
      const chain::BlockUid block = rounds_.propose(kPrimary, queue_.now());
      broadcast(kPrimary, Payload{Kind::PrePrepare, kPrimary, block});
      Replica& r = replica(kPrimary, block);
      r.pre_prepared = true;
      ++r.prepares;
      broadcast(kPrimary, Payload{Kind::Prepare, kPrimary, block});
      advance(kPrimary, r);
      break;
    }
    case Kind::PrePrepare: {
      Replica& r = replica(at, p.block);
      r.pre_prepared = true;
      ++r.prepares;
      broadcast(at, Payload{Kind::Prepare, at, p.block});
      advance(at, r);
      break;
    }
    case Kind::Prepare: {
      Replica& r = replica(at, p.block);
      ++r.prepares;
      advance(at, r);
      break;
    }
    case Kind::Commit: {
      Replica& r = replica(at, p.block);
      ++r.commits;
      advance(at, r);
      break;
    }
  }
}

harness::ExperimentReport PbftSimulation::report() const {
  return rounds_.report(harness::Protocol::Pbft, network_.sent());
}

} // namespace becpsim::baseline

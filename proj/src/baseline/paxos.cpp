#include "becpsim/baseline/paxos.hpp"

namespace becpsim::baseline {

PaxosSimulation::PaxosSimulation(const harness::SimConfig& config)
    : config_(config),
      rounds_(config_, store_),
      network_(queue_, sim::LatencyModel{config.latency_min_s, config.latency_max_s}),
      acceptors_(config.n) {
  rngs_.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) rngs_.push_back(sim::node_stream(config.seed, static_cast<NodeId>(i)));
  if (config.n > 0) queue_.schedule(config.t_block_s, kLeader, Payload{Kind::Propose});
}

void PaxosSimulation::run_until(Seconds end) {
  sim::run_until(queue_, end, [this](const auto& e) { handle(e.target, e.payload); });
}

void PaxosSimulation::broadcast(Payload p) {
  p.from = kLeader;
  for (NodeId to = 0; to < config_.n; ++to) {
    if (to != kLeader) network_.send(to, p, rngs_[kLeader]);
  }
}

void PaxosSimulation::handle(NodeId at, const Payload& p) {
  Acceptor& acceptor = acceptors_[at];
  switch (p.kind) {
    case Kind::Propose:
      ++ballot_;
      proposal_ = chain::kNoBlock;
      acceptors_[kLeader].promised = ballot_;
      promises_ = 1;
      accepts_ = 0;
      broadcast(Payload{Kind::Prepare, kLeader, ballot_});
      if (promises_ == config_.n) on_promises_complete();
      break;
    case Kind::Prepare:
      if (p.ballot > acceptor.promised) {
        acceptor.promised = p.ballot;
        network_.send(p.from, Payload{Kind::Promise, at, p.ballot}, rngs_[at]);
      }
      break;
    case Kind::Promise:
      if (p.ballot == ballot_ && ++promises_ == config_.n) on_promises_complete();
      break;
    case Kind::Accept:
      if (p.ballot >= acceptor.promised) {
        acceptor.promised = p.ballot;
        acceptor.accepted = p.block;
        network_.send(p.from, Payload{Kind::Accepted, at, p.ballot, p.block}, rngs_[at]);
      }
      break;
    case Kind::Accepted:
      if (p.ballot == ballot_ && p.block == proposal_ && ++accepts_ == config_.n) on_accepts_complete();
      break;
    case Kind::Learn:
      learn(at, p.block);
      break;
  }
}

void PaxosSimulation::on_promises_complete() {
  // The block is proposed (and its latency clock starts) once the prepare leg is done.
  proposal_ = rounds_.propose(kLeader, queue_.now());
  acceptors_[kLeader].accepted = proposal_;
  accepts_ = 1;
  broadcast(Payload{Kind::Accept, kLeader, ballot_, proposal_});
  if (accepts_ == config_.n) on_accepts_complete();
}

void PaxosSimulation::on_accepts_complete() {
  broadcast(Payload{Kind::Learn, kLeader, ballot_, proposal_});
  learn(kLeader, proposal_);
}

void PaxosSimulation::learn(NodeId node, chain::BlockUid block) {
  if (rounds_.confirm(node, block, queue_.now())) {
    queue_.schedule(queue_.now() + config_.t_block_s, kLeader, Payload{Kind::Propose});
  }
}

harness::ExperimentReport PaxosSimulation::report() const {
  return rounds_.report(harness::Protocol::Paxos, network_.sent());
}

} // namespace becpsim::baseline

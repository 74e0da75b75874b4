#include "becpsim/baseline/raft.hpp"

namespace becpsim::baseline {

RaftSimulation::RaftSimulation(const harness::SimConfig& config)
    : config_(config),
      rounds_(config_, store_),
      network_(queue_, sim::LatencyModel{config.latency_min_s, config.latency_max_s}),
      nodes_(config.n),
      leader_(static_cast<NodeId>(config.n)) {
  rngs_.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) rngs_.push_back(sim::node_stream(config.seed, static_cast<NodeId>(i)));
  for (std::size_t i = 0; i < config.n; ++i) arm_election_timer(static_cast<NodeId>(i));
}

void RaftSimulation::run_until(Seconds end) {
  sim::run_until(queue_, end, [this](const auto& e) { handle(e.target, e.payload); });
}

void RaftSimulation::arm_election_timer(NodeId id) {
  Node& n = nodes_[id];
  ++n.timer_token;
  const Seconds timeout = sim::uniform(rngs_[id], config_.timeout_min_s, config_.timeout_max_s);
  queue_.schedule(queue_.now() + timeout, id, Payload{Kind::ElectionTimeout, id, 0, n.timer_token});
}

void RaftSimulation::broadcast(NodeId from, Payload p) {
  p.from = from;
  for (NodeId to = 0; to < config_.n; ++to) {
    if (to != from) network_.send(to, p, rngs_[from]);
  }
}

void RaftSimulation::observe_term(NodeId id, std::uint64_t term) {
  Node& n = nodes_[id];
  if (term > n.term) {
    n.term = term;
    n.has_vote = false;
    if (n.role != Role::Follower) {
      n.role = Role::Follower;
      arm_election_timer(id);
    }
  }
}

void RaftSimulation::start_election(NodeId id) {
  Node& n = nodes_[id];
  ++elections_;
  n.role = Role::Candidate;
  ++n.term;
  n.voted_for = id;
  n.has_vote = true;
  n.votes = 1;
  n.election_started = queue_.now();
  arm_election_timer(id);
  broadcast(id, Payload{Kind::RequestVote, id, n.term, 0, chain::kNoBlock, n.election_started});
  if (n.votes >= majority(config_.n)) become_leader(id);
}

void RaftSimulation::become_leader(NodeId id) {
  Node& n = nodes_[id];
  n.role = Role::Leader;
  ++n.timer_token;  // leaders do not time out
  leader_ = id;
  ++leaders_;
  broadcast(id, Payload{Kind::Heartbeat, id, n.term});
  queue_.schedule(queue_.now() + config_.cycle_s, id, Payload{Kind::HeartbeatTick, id, n.term});
  queue_.schedule(queue_.now() + config_.t_block_s, id, Payload{Kind::Propose, id, n.term});
}

void RaftSimulation::commit(NodeId node, chain::BlockUid block) {
  if (rounds_.confirm(node, block, queue_.now())) {
    const Node& l = nodes_[leader_];
    if (l.role == Role::Leader) {
      queue_.schedule(queue_.now() + config_.t_block_s, leader_, Payload{Kind::Propose, leader_, l.term});
    }
  }
}

void RaftSimulation::handle(NodeId at, const Payload& p) {
  Node& n = nodes_[at];
  switch (p.kind) {
    case Kind::ElectionTimeout:
      if (p.token == n.timer_token && n.role != Role::Leader) start_election(at);
      break;

    case Kind::HeartbeatTick:
      if (n.role == Role::Leader && p.term == n.term) {
        broadcast(at, Payload{Kind::Heartbeat, at, n.term});
        queue_.schedule(queue_.now() + config_.cycle_s, at, Payload{Kind::HeartbeatTick, at, n.term});
      }
      break;

    case Kind::Propose:
      if (n.role == Role::Leader && p.term == n.term) {
        pending_ = rounds_.propose(at, queue_.now());
        acks_ = 1;
        broadcast(at, Payload{Kind::Append, at, n.term, 0, pending_});
        if (acks_ >= majority(config_.n)) {
          broadcast(at, Payload{Kind::Commit, at, n.term, 0, pending_});
          commit(at, pending_);
        }
      }
      break;

    case Kind::RequestVote:
      on_vote_request(at, p);
      break;

    case Kind::VoteDecision:
      decide_vote(at, p.term);
      break;

    case Kind::Vote:
      observe_term(at, p.term);
      if (n.role == Role::Candidate && p.term == n.term && p.token == 1 && ++n.votes == majority(config_.n)) {
        become_leader(at);
      }
      break;

    case Kind::Heartbeat:
    case Kind::Append:
    case Kind::Commit:
      observe_term(at, p.term);
      if (p.term < n.term) break;
      if (n.role == Role::Candidate) n.role = Role::Follower;
      arm_election_timer(at);
      if (p.kind == Kind::Append) {
        network_.send(p.from, Payload{Kind::AppendAck, at, n.term, 0, p.block}, rngs_[at]);
      } else if (p.kind == Kind::Commit) {
        commit(at, p.block);
      }
      break;

    case Kind::AppendAck:
      if (n.role == Role::Leader && p.block == pending_ && ++acks_ == majority(config_.n)) {
        broadcast(at, Payload{Kind::Commit, at, n.term, 0, pending_});
        commit(at, pending_);
      }
      break;
  }
}

namespace {
bool earlier(Seconds a_started, NodeId a, Seconds b_started, NodeId b) {
  return a_started < b_started || (a_started == b_started && a < b);
}
} // namespace

void RaftSimulation::on_vote_request(NodeId at, const Payload& p) {
  observe_term(at, p.term);
  Node& n = nodes_[at];
  auto refuse = [&](NodeId to) { network_.send(to, Payload{Kind::Vote, at, n.term, 0}, rngs_[at]); };

  if (p.term < n.term) {
    refuse(p.from);
    return;
  }
  if (n.role == Role::Candidate) {
    // Same term: yield to an earlier candidate. The self-vote only ever counted toward
    // this node's own election, so releasing it is safe.
    if (!earlier(p.started, p.from, n.election_started, at)) {
      refuse(p.from);
      return;
    }
    n.role = Role::Follower;
    n.has_vote = false;
  }
  if (n.role == Role::Leader) {
    refuse(p.from);
    return;
  }
  if (n.has_vote) {
    network_.send(p.from, Payload{Kind::Vote, at, n.term, n.voted_for == p.from ? 1u : 0u}, rngs_[at]);
    return;
  }
  if (n.window_term != n.term || n.requesters.empty()) {
    for (NodeId to : n.requesters) refuse(to);  // leftovers from a superseded term
    n.window_term = n.term;
    n.best = p.from;
    n.best_started = p.started;
    n.requesters.clear();
    arm_election_timer(at);
    const auto& lat = network_.latency();
    queue_.schedule(queue_.now() + (lat.max_s - lat.min_s), at, Payload{Kind::VoteDecision, at, n.term});
  } else if (earlier(p.started, p.from, n.best_started, n.best)) {
    n.best = p.from;
    n.best_started = p.started;
  }
  n.requesters.push_back(p.from);
}

void RaftSimulation::decide_vote(NodeId at, std::uint64_t term) {
  Node& n = nodes_[at];
  if (n.window_term != term) return;
  const bool live = n.term == term && n.role == Role::Follower && !n.has_vote;
  if (live) {
    n.has_vote = true;
    n.voted_for = n.best;
    arm_election_timer(at);
  }
  for (NodeId to : n.requesters) {
    const bool granted = live && to == n.best;
    network_.send(to, Payload{Kind::Vote, at, n.term, granted ? 1u : 0u}, rngs_[at]);
  }
  n.requesters.clear();
}

harness::ExperimentReport RaftSimulation::report() const {
  return rounds_.report(harness::Protocol::Raft, network_.sent());
}

} // namespace becpsim::baseline

#pragma once

#include <cstdint>
#include <vector>

#include "becpsim/baseline/leader_based.hpp"
#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/network.hpp"

namespace becpsim::baseline {

/// Raft with randomized election timeouts, one-way heartbeats every cycle, and one
/// log entry (block) per T_block. An entry commits on majority acknowledgement and
/// the leader then broadcasts the commit index.
///
/// Vote requests are answered after a collection window as long as the latency
/// jitter, granting the earliest-started candidate of the term. With hundreds of
/// nodes timing out within a fraction of a second, first-come voting splits the
/// vote every term; the window lets the first node to time out win.
class RaftSimulation {
 public:
  explicit RaftSimulation(const harness::SimConfig& config);
  RaftSimulation(const RaftSimulation&) = delete;
  RaftSimulation& operator=(const RaftSimulation&) = delete;

  void run_until(Seconds end);
  harness::ExperimentReport report() const;
  std::uint64_t messages_sent() const { return network_.sent(); }
  const chain::CommitLedger& ledger() const { return rounds_.ledger(); }

  std::size_t elections_started() const { return elections_; }
  std::size_t leaders_elected() const { return leaders_; }
  // Leader of the highest term seen so far, or n when none.
  NodeId current_leader() const { return leader_; }

 private:
  enum class Kind : std::uint8_t {
    ElectionTimeout,
    VoteDecision,
    HeartbeatTick,
    Propose,
    RequestVote,
    Vote,
    Heartbeat,
    Append,
    AppendAck,
    Commit,
  };
  enum class Role : std::uint8_t { Follower, Candidate, Leader };
  struct Payload {
    Kind kind = Kind::ElectionTimeout;
    NodeId from = 0;
    std::uint64_t term = 0;
    std::uint64_t token = 0;  // timer generation, or vote granted flag
    chain::BlockUid block = chain::kNoBlock;
    Seconds started = 0.0;  // RequestVote: when the candidate's election began
  };
  struct Node {
    Role role = Role::Follower;
    std::uint64_t term = 0;
    NodeId voted_for = 0;
    bool has_vote = false;
    std::size_t votes = 0;
    std::uint64_t timer_token = 0;
    Seconds election_started = 0.0;
    // Open vote window: best candidate so far and every requester awaiting a reply.
    std::uint64_t window_term = 0;
    NodeId best = 0;
    Seconds best_started = 0.0;
    std::vector<NodeId> requesters;
  };

  void handle(NodeId at, const Payload& p);
  void arm_election_timer(NodeId id);
  void observe_term(NodeId id, std::uint64_t term);
  void start_election(NodeId id);
  void become_leader(NodeId id);
  void broadcast(NodeId from, Payload p);
  void commit(NodeId node, chain::BlockUid block);
  void on_vote_request(NodeId at, const Payload& p);
  void decide_vote(NodeId at, std::uint64_t term);

  harness::SimConfig config_;
  chain::BlockStore store_;
  LeaderRounds rounds_;
  sim::EventQueue<Payload> queue_;
  sim::Network<Payload> network_;
  std::vector<sim::Rng> rngs_;
  std::vector<Node> nodes_;

  NodeId leader_;
  chain::BlockUid pending_ = chain::kNoBlock;
  std::size_t acks_ = 0;
  std::size_t elections_ = 0;
  std::size_t leaders_ = 0;
};

} // namespace becpsim::baseline

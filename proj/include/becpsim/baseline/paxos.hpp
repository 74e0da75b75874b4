#pragma once

#include <cstdint>
#include <vector>

#include "becpsim/baseline/leader_based.hpp"
#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/network.hpp"

namespace becpsim::baseline {

/// Single-decree Paxos per block with node 0 as the permanent proposer. Every
/// instance runs prepare/promise, accept/accepted and learn; the proposer moves
/// to the next leg once every acceptor has answered.
class PaxosSimulation {
 public:
  explicit PaxosSimulation(const harness::SimConfig& config);
  PaxosSimulation(const PaxosSimulation&) = delete;
  PaxosSimulation& operator=(const PaxosSimulation&) = delete;

  void run_until(Seconds end);
  harness::ExperimentReport report() const;
  std::uint64_t messages_sent() const { return network_.sent(); }
  const chain::CommitLedger& ledger() const { return rounds_.ledger(); }

 private:
  enum class Kind : std::uint8_t { Propose, Prepare, Promise, Accept, Accepted, Learn };
  struct Payload {
    Kind kind = Kind::Propose;
    NodeId from = 0;
    std::uint64_t ballot = 0;
    chain::BlockUid block = chain::kNoBlock;
  };
  struct Acceptor {
    std::uint64_t promised = 0;
    chain::BlockUid accepted = chain::kNoBlock;
  };

  void handle(NodeId at, const Payload& p);
  void broadcast(Payload p);
  void on_promises_complete();
  void on_accepts_complete();
  void learn(NodeId node, chain::BlockUid block);

  static constexpr NodeId kLeader = 0;

  harness::SimConfig config_;
  chain::BlockStore store_;
  LeaderRounds rounds_;
  sim::EventQueue<Payload> queue_;
  sim::Network<Payload> network_;
  std::vector<sim::Rng> rngs_;
  std::vector<Acceptor> acceptors_;

  std::uint64_t ballot_ = 0;
  std::size_t promises_ = 0;
  std::size_t accepts_ = 0;
  chain::BlockUid proposal_ = chain::kNoBlock;
};

} // namespace becpsim::baseline

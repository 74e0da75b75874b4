#pragma once

#include <cstdint>
#include <vector>

#include "becpsim/baseline/leader_based.hpp"
#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/network.hpp"

namespace becpsim::baseline {

/// PBFT normal-case operation with node 0 as primary: pre-prepare, all-to-all
/// prepare, all-to-all commit, each quorum being 2f + 1 with f = floor((N - 1) / 3).
class PbftSimulation {
 public:
  explicit PbftSimulation(const harness::SimConfig& config);
  PbftSimulation(const PbftSimulation&) = delete;
  PbftSimulation& operator=(const PbftSimulation&) = delete;

  void run_until(Seconds end);
  harness::ExperimentReport report() const;
  std::uint64_t messages_sent() const { return network_.sent(); }
  const chain::CommitLedger& ledger() const { return rounds_.ledger(); }

  std::size_t faults_tolerated() const { return (config_.n - 1) / 3; }
  std::size_t quorum() const { return 2 * faults_tolerated() + 1; }

 private:
  enum class Kind : std::uint8_t { Propose, PrePrepare, Prepare, Commit };
  struct Payload {
    Kind kind = Kind::Propose;
    NodeId from = 0;
    chain::BlockUid block = chain::kNoBlock;
  };
  struct Replica {
    chain::BlockUid block = chain::kNoBlock;  // instance these counters belong to
    bool pre_prepared = false;
    bool prepared = false;
    bool committed = false;
    std::uint32_t prepares = 0;
    std::uint32_t commits = 0;
  };

  void handle(NodeId at, const Payload& p);
  Replica& replica(NodeId at, chain::BlockUid block);
  void broadcast(NodeId from, Payload p);
  void advance(NodeId at, Replica& r);

  static constexpr NodeId kPrimary = 0;

  harness::SimConfig config_;
  chain::BlockStore store_;
  LeaderRounds rounds_;
  sim::EventQueue<Payload> queue_;
  sim::Network<Payload> network_;
  std::vector<sim::Rng> rngs_;
  std::vector<Replica> replicas_;
};

} // namespace becpsim::baseline

#pragma once

#include <cstdint>
#include <vector>

#include "becpsim/chain/commit_ledger.hpp"
#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"
#include "becpsim/membership/peer_cache.hpp"
#include "becpsim/protocol/block_cache.hpp"
#include "becpsim/protocol/ssep.hpp"
#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/message_pool.hpp"
#include "becpsim/sim/network.hpp"

namespace becpsim::protocol {

struct CycleMessage {
  NodeId sender = 0;
  double ssep_value = 0.0;
  double ssep_weight = 0.0;
  std::vector<TupleSummary> tuples;
  std::vector<NodeId> peers;
  bool is_reply = false;
};

struct BecpNode {
  NodeId id;
  BlockCache cache;
  SizeEstimator ssep;
  membership::PeerCache peers;
  Seconds last_gen_attempt;
  sim::Rng rng;
};

/// Per-block conservation check: held + in flight + discarded must equal what was contributed.
struct MassCensus {
  std::size_t blocks_checked = 0;
  double worst_relative_error = 0.0;
  chain::BlockUid worst_block = chain::kNoBlock;
  double ssep_value_total = 0.0;
  double ssep_weight_total = 0.0;
};

/// Whole-network BECP run: every node gossips once per cycle with one random peer
/// (push-pull), resolves duplicate blocks, and advances per-block phases.
class BecpSimulation final : private MassObserver {
 public:
  explicit BecpSimulation(const harness::SimConfig& config);
  BecpSimulation(const BecpSimulation&) = delete;
  BecpSimulation& operator=(const BecpSimulation&) = delete;

  void run_until(Seconds end);
  Seconds now() const { return queue_.now(); }

  harness::ExperimentReport report() const;
  MassCensus census() const;

  std::size_t node_count() const { return nodes_.size(); }
  const BecpNode& node(NodeId id) const { return nodes_[id]; }
  const chain::BlockStore& blocks() const { return store_; }
  const chain::CommitLedger& ledger() const { return ledger_; }
  std::uint64_t messages_sent() const { return network_.sent(); }
  std::uint64_t events_processed() const { return events_; }
  std::uint64_t deliveries() const { return deliveries_; }
  std::size_t in_flight() const { return pool_.in_use(); }
  // FNV digest over (time, seq, target, kind) of every executed event.
  std::uint64_t trace_digest() const { return trace_; }

 private:
  enum class Kind : std::uint8_t { Cycle, Deliver };
  struct Payload {
    Kind kind = Kind::Cycle;
    std::uint32_t slot = 0;
  };

  void on_cycle(BecpNode& node);
  void on_deliver(BecpNode& node, std::uint32_t slot);
  void send(BecpNode& from, NodeId to, bool is_reply);
  void contributed(chain::BlockUid block, const Pairs& mass) override;
  void discarded(chain::BlockUid block, const Pairs& mass) override;

  harness::SimConfig config_;
  PtpParams ptp_;
  chain::BlockStore store_;
  chain::CommitLedger ledger_;
  sim::EventQueue<Payload> queue_;
  sim::Network<Payload> network_;
  sim::MessagePool<CycleMessage> pool_;
  std::vector<BecpNode> nodes_;
  std::vector<Pairs> contributed_;
  std::vector<Pairs> discarded_;
  std::vector<chain::BlockUid> committed_scratch_;
  std::uint64_t events_ = 0;
  std::uint64_t deliveries_ = 0;
  std::uint64_t trace_ = 0xcbf29ce484222325ULL;
};

} // namespace becpsim::protocol

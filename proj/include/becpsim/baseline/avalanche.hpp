#pragma once

#include <cstdint>
#include <vector>

#include "becpsim/chain/block.hpp"
#include "becpsim/chain/commit_ledger.hpp"
#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"
#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/message_pool.hpp"
#include "becpsim/sim/network.hpp"

namespace becpsim::baseline {

/// Snowball confidence for one height at one node.
struct SnowballState {
  std::vector<chain::BlockUid> candidates;
  std::vector<int> confidence;  // parallel to candidates
  chain::BlockUid last_winner = chain::kNoBlock;
  int consecutive = 0;

  // More than one candidate ever seen at this height.
  bool conflicted() const { return candidates.size() > 1; }
  bool add(chain::BlockUid block);
  int confidence_of(chain::BlockUid block) const;

  /// One poll outcome. `winner` is the α-majority candidate, or kNoBlock when
  /// no candidate reached the quorum (which resets the streak).
  void record_poll(chain::BlockUid winner);
};

/// Avalanche on a linear chain: Snowball per height, polls of K random peers each
/// cycle. A poll carries the sampler's preferred chain and each response carries
/// the responder's, so one poll votes on every open height at once.
class AvalancheSimulation {
 public:
  explicit AvalancheSimulation(const harness::SimConfig& config);
  AvalancheSimulation(const AvalancheSimulation&) = delete;
  AvalancheSimulation& operator=(const AvalancheSimulation&) = delete;

  void run_until(Seconds end);
  harness::ExperimentReport report() const;
  std::uint64_t messages_sent() const { return network_.sent(); }
  const chain::CommitLedger& ledger() const { return ledger_; }

  std::size_t quorum() const;

 private:
  enum class Kind : std::uint8_t { Cycle, Query, Response };
  struct Payload {
    Kind kind = Kind::Cycle;
    std::uint32_t slot = 0;
  };
  struct Message {
    NodeId from = 0;
    std::uint64_t poll = 0;
    chain::Height base = 1;
    std::vector<chain::BlockUid> chain;  // one block per height from base upward
  };
  struct Tally {
    std::vector<std::pair<chain::BlockUid, int>> votes;
  };
  struct Node {
    NodeId id = 0;
    sim::Rng rng;
    Seconds last_gen_attempt = 0.0;
    std::vector<chain::BlockUid> decided;  // index == height, genesis first
    std::vector<SnowballState> open;       // open[i] is height decided.size() + i
    std::uint64_t poll = 0;
    bool polling = false;
    std::size_t responses = 0;
    chain::Height poll_base = 1;
    std::vector<Tally> tally;
  };

  void on_cycle(Node& node);
  void start_poll(Node& node);
  void on_query(Node& node, std::uint32_t slot);
  void on_response(Node& node, std::uint32_t slot);
  void finish_poll(Node& node);
  void learn(Node& node, chain::BlockUid block);
  chain::Height decided_height(const Node& node) const;
  // Preferred block per height starting at `from`; decided blocks first, then the preferred open chain.
  void preferred_chain(const Node& node, chain::Height from, std::vector<chain::BlockUid>& out) const;
  chain::BlockUid preferred_tip(const Node& node) const;
  void send_chain(Node& from, NodeId to, Kind kind, std::uint64_t poll, chain::Height base);

  harness::SimConfig config_;
  chain::BlockStore store_;
  chain::CommitLedger ledger_;
  sim::EventQueue<Payload> queue_;
  sim::Network<Payload> network_;
  sim::MessagePool<Message> pool_;
  std::vector<Node> nodes_;
  std::vector<NodeId> sample_;
};

} // namespace becpsim::baseline

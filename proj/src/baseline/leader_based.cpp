#include "becpsim/baseline/leader_based.hpp"

namespace becpsim::baseline {

LeaderRounds::LeaderRounds(const harness::SimConfig& config, chain::BlockStore& store)
    : config_(&config), store_(&store), ledger_(config.n, store) {}

chain::BlockUid LeaderRounds::propose(NodeId leader, Seconds now) {
  tip_ = store_->create(next_height(), leader, now, tip_);
  counting_ = tip_;
  confirmations_ = 0;
  return tip_;
}

bool LeaderRounds::confirm(NodeId node, chain::BlockUid block, Seconds now) {
  ledger_.record(node, block, now);
  if (block != counting_) return false;
  return ++confirmations_ == majority(config_->n);
}

harness::ExperimentReport LeaderRounds::report(harness::Protocol protocol, std::uint64_t messages) const {
  harness::ExperimentReport r;
  r.protocol = protocol;
  r.n = config_->n;
  r.seed = config_->seed;
  r.duration_s = config_->duration_s;
  r.confirmed_items = ledger_.confirmed_items();
  r.messages_sent = messages;
  r.latency_samples = ledger_.latencies();
  r.chain_digests = ledger_.chain_digests();
  r.safety_violation_count = ledger_.violation_count();
  r.safety_violations = ledger_.violations();
  return r;
}

} // namespace becpsim::baseline

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "becpsim/baseline/avalanche.hpp"
#include "becpsim/baseline/paxos.hpp"
#include "becpsim/baseline/pbft.hpp"
#include "becpsim/baseline/raft.hpp"

using namespace becpsim;
using namespace becpsim::baseline;

namespace {

harness::SimConfig make(harness::Protocol p, std::size_t n, double duration, std::uint64_t seed = 1) {
  harness::SimConfig c;
  c.protocol = p;
  c.n = n;
  c.duration_s = duration;
  c.seed = seed;
  return c;
}

// Every node's confirmed chain is a prefix of the longest one.
template <class Sim>
void check_prefix_consistent(const Sim& sim, std::size_t n) {
  std::vector<chain::BlockUid> longest;
  for (NodeId i = 0; i < n; ++i) {
    if (sim.ledger().chain(i).size() > longest.size()) longest = sim.ledger().chain(i);
  }
  for (NodeId i = 0; i < n; ++i) {
    const auto& c = sim.ledger().chain(i);
    CHECK(std::equal(c.begin(), c.end(), longest.begin()));
  }
}

} // namespace

TEST_CASE("majority is floor(n/2) + 1") {
  CHECK(majority(1) == 1);
  CHECK(majority(3) == 2);
  CHECK(majority(4) == 3);
  CHECK(majority(500) == 251);
}

TEST_CASE("paxos instance at N=3 sends 5 legs of 2 messages") {
  PaxosSimulation sim(make(harness::Protocol::Paxos, 3, 100.0));
  sim.run_until(15.0);  // first proposal at 10 s, next one not before 20 s
  CHECK(sim.messages_sent() == 10);
  const auto r = sim.report();
  CHECK(r.confirmed_items == 1);
  CHECK(r.latency_samples.size() == 3);
}

TEST_CASE("paxos throughput follows T_block plus instance latency") {
  PaxosSimulation sim(make(harness::Protocol::Paxos, 50, 600.0, 2));
  sim.run_until(600.0);
  const auto r = sim.report();
  CHECK(r.safety_violation_count == 0);
  const double lat = std::accumulate(r.latency_samples.begin(), r.latency_samples.end(), 0.0) /
                     static_cast<double>(r.latency_samples.size());
  CHECK(lat > 0.3);
  CHECK(lat < 1.2);
  // Each instance: T_block wait plus at most 3 max-latency legs to majority confirmation.
  CHECK(r.confirmed_items >= static_cast<std::uint64_t>(600.0 / (10.0 + 5 * 0.3)));
  CHECK(r.confirmed_items <= static_cast<std::uint64_t>(600.0 / 10.0));
  const std::uint64_t per = 5 * 49;
  CHECK(r.messages_sent >= per * r.confirmed_items);
  CHECK(r.messages_sent <= per * (r.confirmed_items + 1));
  check_prefix_consistent(sim, 50);
}

TEST_CASE("pbft instance at N=4 sends 27 messages") {
  PbftSimulation sim(make(harness::Protocol::Pbft, 4, 100.0));
  sim.run_until(15.0);
  CHECK(sim.messages_sent() == 3 + 12 + 12);
  CHECK(sim.report().confirmed_items == 1);
  CHECK(sim.report().latency_samples.size() == 4);
}

TEST_CASE("pbft message count per instance at N=20") {
  PbftSimulation sim(make(harness::Protocol::Pbft, 20, 300.0, 3));
  sim.run_until(300.0);
  const auto r = sim.report();
  CHECK(r.safety_violation_count == 0);
  // Completed instances contribute (N-1)(2N+1); a trailing instance may be partial.
  const std::uint64_t per = 19 * 41;
  CHECK(r.messages_sent >= per * r.confirmed_items);
  CHECK(r.messages_sent <= per * (r.confirmed_items + 1));
  check_prefix_consistent(sim, 20);
}

TEST_CASE("raft elects once and heartbeats prevent re-election") {
  RaftSimulation sim(make(harness::Protocol::Raft, 50, 600.0, 4));
  sim.run_until(20.0);
  REQUIRE(sim.leaders_elected() == 1);
  const auto elections = sim.elections_started();
  const auto leader = sim.current_leader();
  sim.run_until(600.0);
  CHECK(sim.elections_started() == elections);
  CHECK(sim.leaders_elected() == 1);
  CHECK(sim.current_leader() == leader);
  CHECK(sim.report().safety_violation_count == 0);
  check_prefix_consistent(sim, 50);
}

TEST_CASE("raft with 500 nodes elects a single leader") {
  RaftSimulation sim(make(harness::Protocol::Raft, 500, 30.0, 1));
  sim.run_until(30.0);
  CHECK(sim.leaders_elected() == 1);
  CHECK(sim.report().confirmed_items >= 1);
}

TEST_CASE("snowball counters") {
  SnowballState s;
  CHECK(s.add(4));
  CHECK_FALSE(s.add(4));
  CHECK_FALSE(s.conflicted());
  s.record_poll(4);
  s.record_poll(4);
  CHECK(s.consecutive == 2);
  CHECK(s.confidence_of(4) == 2);
  s.record_poll(chain::kNoBlock);
  CHECK(s.consecutive == 0);
  CHECK(s.confidence_of(4) == 2);
  s.add(9);
  CHECK(s.conflicted());
  s.record_poll(9);
  CHECK(s.last_winner == 9);
  CHECK(s.consecutive == 1);
}

TEST_CASE("avalanche quorum is ceil(alpha K)") {
  AvalancheSimulation sim(make(harness::Protocol::Avalanche, 20, 1.0));
  CHECK(sim.quorum() == 8);
}

TEST_CASE("avalanche decisions need at least beta1 polls") {
  auto cfg = make(harness::Protocol::Avalanche, 60, 400.0, 5);
  AvalancheSimulation sim(cfg);
  sim.run_until(400.0);
  const auto r = sim.report();
  REQUIRE_FALSE(r.latency_samples.empty());
  // A decision needs beta1 consecutive successful polls, one per cycle.
  const double floor = (cfg.beta1 - 1) * cfg.cycle_s;
  CHECK(*std::min_element(r.latency_samples.begin(), r.latency_samples.end()) >= floor);
  CHECK(r.safety_violation_count == 0);
  check_prefix_consistent(sim, 60);
}

TEST_CASE("avalanche sends 2K messages per node per cycle") {
  auto cfg = make(harness::Protocol::Avalanche, 30, 70.0, 6);
  AvalancheSimulation sim(cfg);
  sim.run_until(70.0);
  const double expected = 2.0 * cfg.k * cfg.n * (70.0 / 0.7);
  CHECK(std::abs(static_cast<double>(sim.messages_sent()) - expected) <= 2.0 * cfg.k * cfg.n);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "becpsim/membership/peer_cache.hpp"

using namespace becpsim;
using namespace becpsim::membership;

namespace {

bool well_formed(const PeerCache& c, std::size_t n) {
  std::set<NodeId> seen(c.entries().begin(), c.entries().end());
  return seen.size() == c.size() && c.size() <= c.capacity() && !c.contains(c.self()) &&
         std::all_of(c.entries().begin(), c.entries().end(), [&](NodeId e) { return e < n; });
}

// Nodes reachable from `start` along cache entries.
std::size_t reachable(const std::vector<PeerCache>& caches, NodeId start) {
  std::vector<bool> seen(caches.size(), false);
  std::queue<NodeId> q;
  q.push(start);
  seen[start] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v : caches[u].entries()) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push(v);
      }
    }
  }
  return count;
}

// One push-pull exchange as done on every cycle message: the reply is sampled before the merge.
void exchange(std::vector<PeerCache>& caches, NodeId from, sim::Rng& rng) {
  auto peer = caches[from].random_node(rng);
  if (!peer) return;
  const auto push = caches[from].sample(kExchangeLength, rng);
  const auto pull = caches[*peer].sample(kExchangeLength, rng);
  caches[*peer].merge(push, from, rng);
  caches[from].merge(pull, *peer, rng);
}

} // namespace

TEST_CASE("bootstrap of a single node is empty") {
  sim::Rng rng = sim::make_stream(1, 0);
  auto caches = bootstrap(1, 50, rng);
  REQUIRE(caches.size() == 1);
  CHECK(caches[0].empty());
  CHECK_FALSE(caches[0].random_node(rng).has_value());
}

TEST_CASE("bootstrap fills distinct non-self peers") {
  sim::Rng rng = sim::make_stream(1, 0);
  auto caches = bootstrap(500, 50, rng);
  for (const auto& c : caches) {
    CHECK(c.size() == 50);
    CHECK(well_formed(c, 500));
  }
  auto small = bootstrap(10, 50, rng);
  for (const auto& c : small) CHECK(c.size() == 9);
}

TEST_CASE("bootstrap rejects zero capacity") {
  sim::Rng rng = sim::make_stream(1, 0);
  CHECK_THROWS_AS(bootstrap(5, 0, rng), std::invalid_argument);
  CHECK_NOTHROW(bootstrap(1, 0, rng));
}

TEST_CASE("bootstrapped peer graph is strongly connected") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    sim::Rng rng = sim::make_stream(seed, sim::kMembershipStream);
    auto caches = bootstrap(100, 50, rng);
    for (NodeId s = 0; s < 100; ++s) CHECK(reachable(caches, s) == 100);
  }
}

TEST_CASE("random_node on a single entry") {
  PeerCache c(0, 50);
  c.insert(7);
  sim::Rng rng = sim::make_stream(1, 1);
  for (int i = 0; i < 10; ++i) CHECK(*c.random_node(rng) == 7);
}

TEST_CASE("random_node is uniform over the cache") {
  PeerCache c(1000, 50);
  for (NodeId i = 0; i < 50; ++i) c.insert(i * 3);
  CHECK_FALSE(c.insert(1000));
  sim::Rng rng = sim::make_stream(11, 1);
  const int draws = 100000;
  std::vector<int> counts(150, 0);
  for (int i = 0; i < draws; ++i) ++counts[*c.random_node(rng)];
  const double expected = draws / 50.0;
  const double sigma = std::sqrt(draws * (1.0 / 50) * (49.0 / 50));
  double chi2 = 0.0;
  for (NodeId i = 0; i < 50; ++i) {
    const double k = counts[i * 3];
    CHECK(std::abs(k - expected) < 3 * sigma);
    chi2 += (k - expected) * (k - expected) / expected;
  }
  CHECK(chi2 < 85.35);  // chi-square, 49 dof, p = 0.001
}

TEST_CASE("merge of disjoint sets truncates to capacity") {
  PeerCache c(0, 50);
  for (NodeId i = 1; i <= 30; ++i) c.insert(i);
  std::vector<NodeId> received;
  for (NodeId i = 100; i < 130; ++i) received.push_back(i);
  sim::Rng rng = sim::make_stream(2, 2);
  const auto merged = ncp_exchange(c, received, 200, rng);
  CHECK(merged.size() == 50);
  CHECK(well_formed(merged, 1000));
  for (NodeId e : merged.entries()) {
    const bool from_inputs = (e >= 1 && e <= 30) || (e >= 100 && e < 130) || e == 200;
    CHECK(from_inputs);
  }
}

TEST_CASE("merge with own contents changes nothing") {
  PeerCache c(0, 50);
  for (NodeId i = 1; i <= 20; ++i) c.insert(i);
  sim::Rng rng = sim::make_stream(2, 3);
  const auto merged = ncp_exchange(c, c.entries(), 5, rng);
  std::set<NodeId> before(c.entries().begin(), c.entries().end());
  std::set<NodeId> after(merged.entries().begin(), merged.entries().end());
  CHECK(before == after);
}

TEST_CASE("merge never admits self") {
  PeerCache c(4, 3);
  std::vector<NodeId> received{4, 4, 9};
  sim::Rng rng = sim::make_stream(2, 4);
  c.merge(received, 4, rng);
  CHECK_FALSE(c.contains(4));
  CHECK(c.contains(9));
}

TEST_CASE("exchanges from a ring balance in-degree") {
  const std::size_t n = 64;
  {
    const std::size_t capacity = 50;
    std::vector<PeerCache> caches;
    for (NodeId i = 0; i < n; ++i) {
      caches.emplace_back(i, capacity);
      caches.back().insert(static_cast<NodeId>((i + 1) % n));
    }
    sim::Rng rng = sim::make_stream(3, 3);
    for (int cycle = 0; cycle < 20; ++cycle) {
      for (NodeId i = 0; i < n; ++i) exchange(caches, i, rng);
      // Census after every cycle: invariants and connectivity hold throughout.
      bool ok = true;
      for (const auto& c : caches) ok = ok && well_formed(c, n);
      CHECK(ok);
      CHECK(reachable(caches, 0) == n);
    }
    std::vector<int> indeg(n, 0);
    for (const auto& c : caches) {
      for (NodeId e : c.entries()) ++indeg[e];
    }
    const auto [lo, hi] = std::minmax_element(indeg.begin(), indeg.end());
    CAPTURE(capacity);
    REQUIRE(*lo > 0);
    CHECK(static_cast<double>(*hi) / *lo < 3.0);
  }
}

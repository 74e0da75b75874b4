#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "becpsim/harness/config.hpp"
#include "becpsim/harness/experiment.hpp"
#include "becpsim/harness/report.hpp"
#include "becpsim/harness/sweep.hpp"

using namespace becpsim;
using namespace becpsim::harness;

namespace {

std::string csv(const std::vector<ExperimentReport>& rs) {
  std::ostringstream out;
  write_csv(out, rs);
  return out.str();
}

SimConfig small(Protocol p, std::uint64_t seed = 1) {
  SimConfig c;
  c.protocol = p;
  c.n = 30;
  c.duration_s = 120.0;
  c.seed = seed;
  return c;
}

} // namespace

TEST_CASE("defaults match the experiment settings") {
  SimConfig c;
  CHECK(c.n == 500);
  CHECK(c.cycle_s == 0.7);
  CHECK(c.d1_s == 0.1);
  CHECK(c.t_block_s == 10.0);
  CHECK(c.p_block == 0.05);
  CHECK(c.epsilon1 == 0.01);
  CHECK(c.psi == 3);
  CHECK(c.n_cache == 50);
  CHECK(c.k == 10);
  CHECK(c.alpha == 0.8);
  CHECK(c.beta1 == 50);
  CHECK(c.beta2 == 150);
  CHECK(c.timeout_min_s == 1.0);
  CHECK(c.timeout_max_s == 1.2);
  CHECK(c.latency_min_s == 0.01);
  CHECK(c.latency_max_s == 0.3);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("settings parse and override") {
  SimConfig c;
  const auto applied = apply_settings(c, {{"protocol", "raft"}, {"nodes", "100"}, {"latency-max", "0.25"}});
  CHECK(applied.size() == 3);
  CHECK(c.protocol == Protocol::Raft);
  CHECK(c.n == 100);
  CHECK(c.latency_max_s == 0.25);
  CHECK_THROWS_AS(apply_settings(c, {{"nodes", "12x"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_settings(c, {{"bogus", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_settings(c, {{"protocol", "hotstuff"}}), std::invalid_argument);
}

TEST_CASE("settings file skips comments") {
  const std::string path = "harness_test_settings.txt";
  {
    std::ofstream f(path);
    f << "# comment\n\nprotocol = pbft\n  seed=4\n";
  }
  const auto s = read_settings_file(path);
  CHECK(s.at("protocol") == "pbft");
  CHECK(s.at("seed") == "4");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_settings_file("does/not/exist"), std::invalid_argument);
}

TEST_CASE("validation rejects bad values") {
  SimConfig c;
  c.p_block = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.latency_min_s = 0.3;
  c.latency_max_s = 0.3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.protocol = Protocol::Raft;
  c.cycle_s = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("irrelevant fields are reported per protocol") {
  SimConfig c;
  c.protocol = Protocol::Paxos;
  CHECK(c.irrelevant({"k", "nodes", "psi"}) == std::vector<std::string>{"k", "psi"});
  c.protocol = Protocol::Avalanche;
  CHECK(c.irrelevant({"k", "beta2"}).empty());
}

TEST_CASE("empty runs") {
  SimConfig c;
  c.n = 0;
  auto r = run_experiment(c);
  CHECK(r.messages_sent == 0);
  CHECK(throughput(r) == 0);
  c = SimConfig{};
  c.duration_s = 0.0;
  r = run_experiment(c);
  CHECK(overhead(r) == 0);
  CHECK(avg_latency(r) == 0.0);

  SimConfig lone = small(Protocol::Becp);
  lone.n = 1;
  CHECK(overhead(run_experiment(lone)) == 0);
}

TEST_CASE("metrics") {
  ExperimentReport r;
  r.latency_samples = {5.0, 5.0, 5.0};
  CHECK(avg_latency(r) == 5.0);
  r.latency_samples = {1.0, 2.0, 4.5};
  CHECK(avg_latency(r) == doctest::Approx(7.5 / 3));
}

TEST_CASE("csv header only for no reports") {
  CHECK(csv({}) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("csv round trip and column layout") {
  const auto reports = run_sweep_serial(seed_range(small(Protocol::Becp), 1, 3));
  const std::string text = csv(reports);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  std::istringstream in(text);
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto want = summarize(reports[i]);
    CHECK(rows[i].protocol == "becp");
    CHECK(rows[i].n == want.n);
    CHECK(rows[i].seed == i + 1);
    CHECK(rows[i].confirmed_items == want.confirmed_items);
    CHECK(rows[i].messages_sent == want.messages_sent);
    CHECK(rows[i].avg_latency_s == doctest::Approx(want.avg_latency_s).epsilon(1e-6));
  }
  std::istringstream bad("protocol,n\nbecp,1\n");
  CHECK_THROWS(read_csv(bad));
}

TEST_CASE("json carries summary and raw samples") {
  const auto r = run_experiment(small(Protocol::Paxos));
  std::ostringstream out;
  write_json(out, {r});
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j["runs"].size() == 1);
  const auto& run = j["runs"][0];
  CHECK(run["protocol"] == "paxos");
  CHECK(run["confirmed_items"] == r.confirmed_items);
  CHECK(run["messages_sent"] == r.messages_sent);
  CHECK(run["latency_samples"].size() == r.latency_samples.size());
  CHECK(run["chain_digests"].size() == 30);
}

TEST_CASE("throughput equals the longest confirmed chain") {
  for (auto p : {Protocol::Becp, Protocol::Paxos, Protocol::Pbft, Protocol::Raft, Protocol::Avalanche}) {
    auto cfg = small(p);
    cfg.duration_s = 300.0;
    const auto r = run_experiment(cfg);
    CAPTURE(to_string(p));
    CHECK(r.safety_violation_count == 0);
    CHECK(throughput(r) == r.confirmed_items);
    CHECK(r.latency_samples.size() >= r.confirmed_items);
  }
}

TEST_CASE("seed ranges") {
  CHECK(parse_seeds("5", 3) == std::pair<std::uint64_t, std::uint64_t>{3, 5});
  CHECK(parse_seeds("1-5", 9) == std::pair<std::uint64_t, std::uint64_t>{1, 5});
  CHECK_THROWS_AS(parse_seeds("5-1", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_seeds("0", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_seeds("a", 1), std::invalid_argument);
}

TEST_CASE("sweep emits runs in seed order and means match a recomputation") {
  const auto reports = run_sweep(seed_range(small(Protocol::Becp), 1, 5));
  REQUIRE(reports.size() == 5);
  double items = 0, msgs = 0, lat = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(reports[i].seed == i + 1);
    items += static_cast<double>(reports[i].confirmed_items);
    msgs += static_cast<double>(reports[i].messages_sent);
    const auto& s = reports[i].latency_samples;
    lat += s.empty() ? 0.0 : std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  }
  const auto m = mean_over(reports);
  CHECK(m.runs == 5);
  CHECK(m.confirmed_items == doctest::Approx(items / 5));
  CHECK(m.messages_sent == doctest::Approx(msgs / 5));
  CHECK(m.avg_latency_s == doctest::Approx(lat / 5));
}

TEST_CASE("parallel sweep equals the serial reference") {
  std::vector<SimConfig> configs;
  for (auto p : {Protocol::Becp, Protocol::Avalanche, Protocol::Paxos, Protocol::Raft, Protocol::Pbft}) {
    for (auto& c : seed_range(small(p), 1, 2)) configs.push_back(c);
  }
  const auto serial = run_sweep_serial(configs);
  const auto parallel = run_sweep(configs);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].messages_sent == parallel[i].messages_sent);
    CHECK(serial[i].latency_samples == parallel[i].latency_samples);
    CHECK(serial[i].chain_digests == parallel[i].chain_digests);
  }
  CHECK(csv(serial) == csv(parallel));
}

TEST_CASE("sweep surfaces config errors") {
  auto bad = small(Protocol::Becp);
  bad.k = 0;
  CHECK_THROWS_AS(run_sweep({small(Protocol::Becp), bad}), std::invalid_argument);
}

TEST_CASE("same config and seed give byte-identical csv") {
  for (auto p : {Protocol::Becp, Protocol::Avalanche, Protocol::Paxos, Protocol::Raft, Protocol::Pbft}) {
    const auto cfg = small(p, 11);
    CHECK(csv({run_experiment(cfg)}) == csv({run_experiment(cfg)}));
  }
}

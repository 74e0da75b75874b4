#include "becpsim/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

namespace becpsim::harness {

const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::Becp: return "becp";
    case Protocol::Avalanche: return "avalanche";
    case Protocol::Paxos: return "paxos";
    case Protocol::Raft: return "raft";
    case Protocol::Pbft: return "pbft";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::Becp, Protocol::Avalanche, Protocol::Paxos, Protocol::Raft, Protocol::Pbft}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown protocol: " + std::string(name));
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw std::invalid_argument("bad value for " + key + ": '" + text + "'");
  return value;
}

using Setter = std::function<void(SimConfig&, const std::string&, const std::string&)>;

template <class T>
Setter set(T SimConfig::*field) {
  return [field](SimConfig& c, const std::string& k, const std::string& v) { c.*field = parse_number<T>(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"protocol", [](SimConfig& c, const std::string&, const std::string& v) { c.protocol = parse_protocol(v); }},
      {"nodes", set(&SimConfig::n)},
      {"duration", set(&SimConfig::duration_s)},
      {"seed", set(&SimConfig::seed)},
      {"cycle", set(&SimConfig::cycle_s)},
      {"d1", set(&SimConfig::d1_s)},
      {"t-block", set(&SimConfig::t_block_s)},
      {"p-block", set(&SimConfig::p_block)},
      {"epsilon1", set(&SimConfig::epsilon1)},
      {"psi", set(&SimConfig::psi)},
      {"n-cache", set(&SimConfig::n_cache)},
      {"k", set(&SimConfig::k)},
      {"alpha", set(&SimConfig::alpha)},
      {"beta1", set(&SimConfig::beta1)},
      {"beta2", set(&SimConfig::beta2)},
      {"timeout-min", set(&SimConfig::timeout_min_s)},
      {"timeout-max", set(&SimConfig::timeout_max_s)},
      {"latency-min", set(&SimConfig::latency_min_s)},
      {"latency-max", set(&SimConfig::latency_max_s)},
  };
  return table;
}

// Which protocols read each tunable; keys absent here apply to every protocol.
const std::map<std::string, std::set<Protocol>>& users() {
  using P = Protocol;
  static const std::map<std::string, std::set<Protocol>> table = {
      {"cycle", {P::Becp, P::Avalanche, P::Raft}},
      {"d1", {P::Becp, P::Avalanche}},
      {"p-block", {P::Becp, P::Avalanche}},
      {"epsilon1", {P::Becp}},
      {"psi", {P::Becp}},
      {"n-cache", {P::Becp}},
      {"k", {P::Avalanche}},
      {"alpha", {P::Avalanche}},
      {"beta1", {P::Avalanche}},
      {"beta2", {P::Avalanche}},
      {"timeout-min", {P::Raft}},
      {"timeout-max", {P::Raft}},
  };
  return table;
}

} // namespace

void SimConfig::validate() const {
  require(duration_s >= 0.0, "duration must be non-negative");
  require(cycle_s > 0.0, "cycle must be positive");
  require(d1_s > 0.0, "d1 must be positive");
  require(t_block_s > 0.0, "t-block must be positive");
  require(p_block > 0.0 && p_block <= 1.0, "p-block must be in (0, 1]");
  require(epsilon1 > 0.0, "epsilon1 must be positive");
  require(psi > 0, "psi must be positive");
  require(n_cache > 0 || n <= 1, "n-cache must be positive");
  require(k > 0, "k must be positive");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
  require(beta1 > 0 && beta2 > 0, "beta1 and beta2 must be positive");
  require(timeout_min_s > 0.0 && timeout_max_s >= timeout_min_s, "timeout range must be positive and ordered");
  require(latency_min_s >= 0.0 && latency_max_s > latency_min_s, "latency range must satisfy 0 <= min < max");
  if (protocol == Protocol::Raft) {
    require(cycle_s + latency_max_s - latency_min_s < timeout_min_s,
            "raft heartbeat cycle plus latency jitter must stay below the minimum election timeout");
  }
}

std::vector<std::string> SimConfig::irrelevant(const std::vector<std::string>& set_fields) const {
  std::vector<std::string> out;
  for (const auto& key : set_fields) {
    auto it = users().find(key);
    if (it != users().end() && !it->second.contains(protocol)) out.push_back(key);
  }
  return out;
}

std::vector<std::string> apply_settings(SimConfig& config, const std::map<std::string, std::string>& settings) {
  std::vector<std::string> applied;
  for (const auto& [key, value] : settings) {
    auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument("unknown setting: " + key);
    it->second(config, key, value);
    applied.push_back(key);
  }
  return applied;
}

std::map<std::string, std::string> read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

} // namespace becpsim::harness

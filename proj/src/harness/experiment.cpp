#include "becpsim/harness/experiment.hpp"

#include "becpsim/baseline/avalanche.hpp"
#include "becpsim/baseline/paxos.hpp"
#include "becpsim/baseline/pbft.hpp"
#include "becpsim/baseline/raft.hpp"
#include "becpsim/protocol/becp_simulation.hpp"

namespace becpsim::harness {

namespace {

template <class Sim>
ExperimentReport run(const SimConfig& config) {
  Sim sim(config);
  sim.run_until(config.duration_s);
  return sim.report();
}

} // namespace

ExperimentReport run_experiment(const SimConfig& config) {
  config.validate();
  if (config.n == 0 || config.duration_s <= 0.0) {
    ExperimentReport empty;
    empty.protocol = config.protocol;
    empty.n = config.n;
    empty.seed = config.seed;
    empty.duration_s = config.duration_s;
    return empty;
  }
  switch (config.protocol) {
    case Protocol::Becp: return run<protocol::BecpSimulation>(config);
    case Protocol::Avalanche: return run<baseline::AvalancheSimulation>(config);
    case Protocol::Paxos: return run<baseline::PaxosSimulation>(config);
    case Protocol::Raft: return run<baseline::RaftSimulation>(config);
    case Protocol::Pbft: return run<baseline::PbftSimulation>(config);
  }
  return {};
}

} // namespace becpsim::harness

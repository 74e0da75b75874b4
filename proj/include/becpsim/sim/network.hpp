#pragma once

#include <cstdint>

#include "becpsim/sim/event_queue.hpp"
#include "becpsim/sim/latency.hpp"

namespace becpsim::sim {

/// Reliable point-to-point channel over an EventQueue. Every send is one
/// counted message delivered exactly once after a sampled WAN delay.
template <class Payload>
class Network {
 public:
  Network(EventQueue<Payload>& queue, LatencyModel latency) : queue_(&queue), latency_(latency) {}

  void send(NodeId to, Payload payload, Rng& sender_rng) {
    ++sent_;
    queue_->schedule(queue_->now() + latency_.sample(sender_rng), to, std::move(payload));
  }

  std::uint64_t sent() const { return sent_; }
  const LatencyModel& latency() const { return latency_; }

 private:
  EventQueue<Payload>* queue_;
  LatencyModel latency_;
  std::uint64_t sent_ = 0;
};

} // namespace becpsim::sim

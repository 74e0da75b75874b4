#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "becpsim/types.hpp"

namespace becpsim::sim {

template <class Payload>
struct SimEvent {
  Seconds deliver_at = 0.0;
  std::uint64_t seq = 0;
  NodeId target = 0;
  Payload payload{};
};

/// Virtual clock plus a min-queue ordered by (deliver_at, seq). seq is the
/// insertion counter, so events scheduled for the same instant run FIFO.
template <class Payload>
class EventQueue {
 public:
  using Event = SimEvent<Payload>;

  Seconds now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Seconds next_time() const { return heap_.top().deliver_at; }

  // Scheduling into the past is a bug in the caller.
  void schedule(Seconds at, NodeId target, Payload payload) {
    if (at < now_) {
      throw std::logic_error("event scheduled in the past: " + std::to_string(at) + " < " +
                             std::to_string(now_));
    }
    heap_.push(Event{at, next_seq_++, target, std::move(payload)});
  }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    now_ = e.deliver_at;
    return e;
  }

  // Moves the clock forward without executing anything.
  void advance_to(Seconds t) {
    if (t > now_) now_ = t;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.deliver_at != b.deliver_at) return a.deliver_at > b.deliver_at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  Seconds now_ = 0.0;
};

/// Executes every event with deliver_at <= end, then parks the clock at end.
/// Events past end stay queued, so repeated calls with growing end resume cleanly.
template <class Payload, class Handler>
void run_until(EventQueue<Payload>& queue, Seconds end, Handler&& handle) {
  while (!queue.empty() && queue.next_time() <= end) {
    auto event = queue.pop();
    handle(event);
  }
  queue.advance_to(end);
}

} // namespace becpsim::sim

#pragma once

#include <cstdint>
#include <vector>

namespace becpsim::sim {

// Slab of reusable message bodies; released slots keep their vector capacity.
template <class T>
class MessagePool {
 public:
  std::uint32_t acquire() {
    if (!free_.empty()) {
      const std::uint32_t slot = free_.back();
      free_.pop_back();
      return slot;
    }
    slots_.emplace_back();
    return static_cast<std::uint32_t>(slots_.size() - 1);
  }

  void release(std::uint32_t slot) { free_.push_back(slot); }

  T& operator[](std::uint32_t slot) { return slots_[slot]; }
  const T& operator[](std::uint32_t slot) const { return slots_[slot]; }

  std::size_t in_use() const { return slots_.size() - free_.size(); }

  template <class Fn>
  void for_each_in_use(Fn&& fn) const {
    std::vector<bool> is_free(slots_.size(), false);
    for (auto s : free_) is_free[s] = true;
    for (std::uint32_t s = 0; s < slots_.size(); ++s) {
      if (!is_free[s]) fn(slots_[s]);
    }
  }

 private:
  std::vector<T> slots_;
  std::vector<std::uint32_t> free_;
};

} // namespace becpsim::sim

#pragma once

#include <optional>

namespace becpsim::protocol {

/// System-size estimation by push-sum: the initiator starts with value 1, every
/// node with weight 1, so weight/value converges to the node count everywhere.
struct SizeEstimator {
  double value = 0.0;
  double weight = 1.0;

  static SizeEstimator initiator() { return {1.0, 1.0}; }
  static SizeEstimator member() { return {0.0, 1.0}; }

  /// getSystemSize(); nullopt until this node has received any value mass.
  std::optional<double> estimate() const {
    if (!(value > 0.0) || !(weight > 0.0)) return std::nullopt;
    return weight / value;
  }

  SizeEstimator split() {
    value *= 0.5;
    weight *= 0.5;
    return *this;
  }

  void absorb(double v, double w) {
    value += v;
    weight += w;
  }
};

} // namespace becpsim::protocol

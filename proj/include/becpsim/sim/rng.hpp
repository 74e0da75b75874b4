#pragma once

#include <cstdint>
#include <random>

#include "becpsim/types.hpp"

namespace becpsim::sim {

using Rng = std::mt19937_64;

// Reserved stream ids for run-level randomness; node streams use the node id.
inline constexpr std::uint64_t kMembershipStream = 0xFFFF'FFFF'0000'0001ULL;
inline constexpr std::uint64_t kElectionStream = 0xFFFF'FFFF'0000'0002ULL;

/// splitmix64 finalizer over (seed, stream); used to derive independent substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) { return Rng{mix_seed(seed, stream)}; }

inline Rng node_stream(std::uint64_t seed, NodeId node) { return make_stream(seed, node); }

/// Uniform double in [0, 1) built from the top 53 bits; identical on every platform.
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

inline bool bernoulli(Rng& rng, double p) { return unit_uniform(rng) < p; }

/// Uniform index in [0, n); n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

} // namespace becpsim::sim

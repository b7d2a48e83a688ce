#pragma once

#include <cstdint>
#include <random>

namespace sgrass {

using Rng = std::mt19937_64;

/// Stream tags keep the substreams of different consumers apart even when
/// they share a seed and an index.
enum class Stream : std::uint64_t {
  Channel = 1,
  Symbols = 2,
  Precoder = 3,
  Optimizer = 4,
  ExpMap = 5,
  Angles = 6,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based substream: the engine for (seed, stream, index) depends only
/// on those three values, so Monte Carlo trials can run in any order.
Rng substream(std::uint64_t seed, Stream stream, std::uint64_t index);

}  // namespace sgrass

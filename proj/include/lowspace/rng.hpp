#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lowspace {

using Rng = std::mt19937_64;

// Named sub-streams: every consumer of randomness gets its own engine derived
// from (root seed, stream name, index), so parallel and sequential runs draw
// identical numbers.
inline Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace lowspace

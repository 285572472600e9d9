#pragma once

#include <cstdint>
#include <random>

namespace nlup {

/// SplitMix64 step; used as a seed mixer so that sub-streams derived from
/// one global seed are decorrelated.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives the seed of sub-stream `stream` from a base seed. Counter-based,
/// so components (dataset, init, shuffle, per-sample draws) can be re-run
/// independently yet reproducibly.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream));
}

inline std::mt19937_64 make_engine(std::uint64_t base, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(base, stream));
}

// Fixed stream ids for the global seed fan-out.
namespace seed_stream {
constexpr std::uint64_t dataset = 1;
constexpr std::uint64_t model_init = 2;
constexpr std::uint64_t shuffle = 3;
}  // namespace seed_stream

}  // namespace nlup

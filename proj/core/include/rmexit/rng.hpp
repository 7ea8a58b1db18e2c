#pragma once

#include <cstdint>

namespace rmexit {

// Counter-based randomness: every draw is a pure function of
// (seed, stream, trial, index), so results are bit-identical no matter how
// trials are sheared across worker threads.  The mixer is the splitmix64
// finalizer, which is well distributed enough for Monte Carlo sampling.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Identifies one independent draw sequence (e.g. one grid point).
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Per-trial base key; per-index draws chain off it.
  std::uint64_t trial_key(std::uint64_t trial) const {
    return mix64(mix64(seed ^ 0x8000000000000000ull) ^ mix64(stream) ^
                 (trial * 0xd1342543de82ef95ull));
  }
};

/// Uniform double in [0, 1) from a 64-bit word (53-bit resolution).
inline double uniform_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Draw `index`-th uniform of the trial keyed by `key`.
inline double uniform_at(std::uint64_t key, std::uint64_t index) {
  return uniform_unit(mix64(key ^ (index * 0x9e3779b97f4a7c15ull)));
}

}  // namespace rmexit

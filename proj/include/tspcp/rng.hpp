#pragma once

#include <cstdint>
#include <random>

namespace tspcp {

using Rng = std::mt19937_64;

// Uniform integer in [0, n). Implemented directly so results do not depend
// on the standard library's distribution internals.
inline std::uint64_t rng_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Uniform double in [0, 1).
inline double rng_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void rng_shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng_below(rng, i)]);
}

}  // namespace tspcp

#pragma once

#include <cstdint>
#include <random>

#include "tracecode/errors.hpp"

namespace tracecode {

// All randomness flows through mt19937_64 plus this rejection sampler, so
// outputs are identical across platforms and standard libraries (the
// distributions in <random> are not portable). Recorded in manifests as
// generator "mt19937_64/rej-v1".
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw parameter_error("uniform_below: empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

// Uniform in [lo, hi], inclusive.
inline std::uint64_t uniform_in(std::mt19937_64& rng, std::uint64_t lo,
                                std::uint64_t hi) {
  if (lo > hi) throw parameter_error("uniform_in: empty range");
  return lo + uniform_below(rng, hi - lo + 1);
}

constexpr const char* kRngName = "mt19937_64/rej-v1";

}  // namespace tracecode

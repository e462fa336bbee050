#include "rbn/random_stream.hpp"

#include <limits>
#include <stdexcept>

namespace rbn {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::derive(
    std::initializer_list<std::uint64_t> path) const {
  std::uint64_t h = splitmix64(seed_ ^ 0x6A09E667F3BCC909ULL);
  for (std::uint64_t index : path) {
    h = splitmix64(h ^ splitmix64(index + 0xBB67AE8584CAA73BULL));
  }
  return RandomStream(h);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Accept only x below the largest multiple of bound in [0, 2^64).
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (x > limit) {
    x = engine_();
  }
  return x % bound;
}

std::uint64_t RandomStream::uniform_between(std::uint64_t lo,
                                            std::uint64_t hi) {
  if (hi < lo) {
    throw std::invalid_argument("uniform_between: empty range");
  }
  return lo + uniform_below(hi - lo + 1);
}

}  // namespace rbn

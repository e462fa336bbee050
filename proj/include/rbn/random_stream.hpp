#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rbn {

// Explicitly seeded pseudo-random source. Draws are reproducible across
// platforms: bounded integers use rejection sampling on the raw 64-bit
// engine output instead of std::uniform_int_distribution.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  // Independent child stream keyed by a path of indices, e.g.
  // derive({network_index, scheme_tag}).
  RandomStream derive(std::initializer_list<std::uint64_t> path) const;
  RandomStream derive(std::uint64_t index) const { return derive({index}); }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace rbn

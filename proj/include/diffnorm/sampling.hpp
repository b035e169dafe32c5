#pragma once

// Seeded random sequences for the randomized audits. The value mapping is
// spelled out here instead of using std::uniform_int_distribution so that a
// seed reproduces the same sequences with every standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "diffnorm/core.hpp"
#include "diffnorm/sequences.hpp"

namespace diffnorm {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo,
                                std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

/// Length uniform in [min_len, max_len], terms uniform in [-bound, bound].
inline IntegerSequence random_sequence(std::mt19937_64& rng, std::size_t min_len,
                                       std::size_t max_len, std::int64_t bound) {
  const auto n = static_cast<std::size_t>(
      uniform_int(rng, static_cast<std::int64_t>(min_len),
                  static_cast<std::int64_t>(max_len)));
  std::vector<BigInt> terms;
  terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) terms.emplace_back(uniform_int(rng, -bound, bound));
  return IntegerSequence("random", std::move(terms));
}

}  // namespace diffnorm

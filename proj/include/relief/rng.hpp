#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace relief {

// All randomized code in the library draws through these helpers instead of
// the <random> distribution classes, whose output is implementation-defined.
// Given the same engine sequence the results are identical everywhere.

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// `count` distinct values from [0, universe), in draw order.
inline std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t count,
                                                std::size_t universe) {
  std::vector<std::size_t> picked;
  picked.reserve(count);
  while (picked.size() < count) {
    const auto c = static_cast<std::size_t>(uniform_below(rng, universe));
    if (std::find(picked.begin(), picked.end(), c) == picked.end()) {
      picked.push_back(c);
    }
  }
  return picked;
}

}  // namespace relief

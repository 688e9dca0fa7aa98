#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "gtht/errors.hpp"

namespace gtht {

// SplitMix64 (Steele/Lea/Flood). Small, fast, and fully specified, so
// sampled designs are reproducible across compilers and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw input_error("SplitMix64::bounded: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream keys: distinct indices give distinct, statistically
// independent streams under the same master key. Nested calls implement
// multi-component keys, e.g. derive(derive(seed, rep), column).
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) {
  return mix64(key + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

// Uniform k-subset of {0,...,n-1} by partial Fisher-Yates on `pool`.
// `pool` must be a permutation of 0..n-1 on entry; the swaps are undone
// before returning, so the same pool can be reused across many draws.
// Output order is the selection order (not sorted).
inline void sample_distinct_into(SplitMix64& g, int k, std::vector<int>& pool,
                                 std::vector<int>& out) {
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) throw input_error("sample_distinct: k out of range");
  out.resize(static_cast<std::size_t>(k));
  std::vector<std::pair<int, int>> swaps;
  swaps.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
    swaps.emplace_back(i, j);
    out[static_cast<std::size_t>(i)] = pool[i];
  }
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
    std::swap(pool[it->first], pool[it->second]);
}

inline std::vector<int> sample_distinct(SplitMix64& g, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  sample_distinct_into(g, k, pool, out);
  return out;
}

}  // namespace gtht

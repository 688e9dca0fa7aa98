#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace gtht {

// C(n,k) if it fits into 64 bits, nullopt otherwise.
inline std::optional<std::uint64_t> binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return std::uint64_t{0};
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

// Visits every k-subset of {0,...,n-1} in colexicographic order.
// f receives a span over the current (sorted) index tuple.
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(std::span<const int>{});
    return;
  }
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    f(std::span<const int>(c.data(), c.size()));
    int i = 0;
    while (i < k) {
      const int upper = (i + 1 < k) ? c[i + 1] : n;
      if (c[i] + 1 < upper) break;
      ++i;
    }
    if (i == k) return;
    ++c[i];
    for (int j = 0; j < i; ++j) c[j] = j;
  }
}

}  // namespace gtht

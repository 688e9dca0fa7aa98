#pragma once

#include <span>
#include <vector>

#include "gtht/bits.hpp"
#include "gtht/ensemble.hpp"
#include "gtht/subsets.hpp"

namespace gtht::test {

// Independent oracle for the union-weight distribution: enumerate every
// ordered k-tuple of weight-w columns and histogram the union weights, in
// exact rational arithmetic. Feasible for N <= 6, k <= 3.
inline std::vector<Rational> brute_force_pmf(int n, int k, int wbar) {
  std::vector<BitVector> cols;
  for_each_subset(n, wbar, [&](std::span<const int> rows) {
    BitVector c(n);
    for (int i : rows) c.set(i);
    cols.push_back(std::move(c));
  });
  std::vector<BigInt> hist(static_cast<std::size_t>(n) + 1, BigInt(0));
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  const std::size_t m = cols.size();
  BigInt total = 0;
  for (;;) {
    BitVector acc(n);
    for (std::size_t idx : pick) acc.or_with(cols[idx]);
    ++hist[static_cast<std::size_t>(acc.weight())];
    ++total;
    int pos = k - 1;
    while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == m) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::vector<Rational> pmf(hist.size());
  for (std::size_t w = 0; w < hist.size(); ++w) pmf[w] = Rational(hist[w], total);
  return pmf;
}

}  // namespace gtht::test

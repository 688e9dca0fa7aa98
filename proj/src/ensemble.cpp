#include "gtht/ensemble.hpp"

#include <cmath>
#include <numeric>

#include "gtht/rng.hpp"

namespace gtht {

EnsembleSpec::EnsembleSpec(int n_tests_, int n_items_, int column_weight_)
    : n_tests(n_tests_), n_items(n_items_), column_weight(column_weight_) {
  if (n_tests < 1 || n_items < 1)
    throw input_error("EnsembleSpec: dimensions must be positive");
  if (column_weight < 1 || column_weight > n_tests)
    throw input_error("EnsembleSpec: column weight must be in [1, N]");
}

int weight_from_Q(int n_tests, double q) {
  if (n_tests < 1) throw input_error("weight_from_Q: N must be positive");
  if (!(q > 0.0) || !(q < 1.0))
    throw input_error("weight_from_Q: Q must lie in (0,1)");
  const int w = static_cast<int>(std::floor(q * n_tests));
  return w < 1 ? 1 : w;
}

TestMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
  TestMatrix x(spec.n_tests, spec.n_items);
  std::vector<int> pool(static_cast<std::size_t>(spec.n_tests));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> rows;
  for (int j = 0; j < spec.n_items; ++j) {
    SplitMix64 g(derive_stream(seed, static_cast<std::uint64_t>(j)));
    sample_distinct_into(g, spec.column_weight, pool, rows);
    for (int i : rows) x.set(i, j, true);
  }
  return x;
}

namespace {

BigInt big_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace

std::vector<Rational> union_weight_pmf_exact(int n_tests, int k, int column_weight) {
  if (k < 1) throw input_error("union_weight_pmf: k must be >= 1");
  if (column_weight < 1 || column_weight > n_tests)
    throw input_error("union_weight_pmf: column weight must be in [1, N]");

  const int wbar = column_weight;
  const BigInt denom = boost::multiprecision::pow(big_binomial(n_tests, wbar),
                                                  static_cast<unsigned>(k));
  std::vector<Rational> pmf(static_cast<std::size_t>(n_tests) + 1, Rational(0));
  const int w_hi = std::min<long long>(n_tests, static_cast<long long>(k) * wbar);
  for (int w = wbar; w <= w_hi; ++w) {
    // ordered k-tuples of wbar-subsets of a fixed w-set covering all w rows
    BigInt onto = 0;
    for (int i = 0; i + wbar <= w; ++i) {
      const BigInt term =
          big_binomial(w, i) *
          boost::multiprecision::pow(big_binomial(w - i, wbar),
                                     static_cast<unsigned>(k));
      if (i % 2 == 0)
        onto += term;
      else
        onto -= term;
    }
    pmf[static_cast<std::size_t>(w)] =
        Rational(big_binomial(n_tests, w) * onto, denom);
  }
  return pmf;
}

UnionWeightPMF union_weight_pmf(int n_tests, int k, int column_weight) {
  const auto exact = union_weight_pmf_exact(n_tests, k, column_weight);
  UnionWeightPMF out;
  out.n_tests = n_tests;
  out.k = k;
  out.column_weight = column_weight;
  out.probs.resize(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    out.probs[i] = exact[i].convert_to<double>();
  return out;
}

}  // namespace gtht

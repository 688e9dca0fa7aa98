#include "gtht/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtht/rng.hpp"
#include "gtht/subsets.hpp"

namespace gtht {

namespace {

std::uint64_t checked_subset_count(int t, int k, std::uint64_t cap,
                                   const char* who) {
  const auto n = binomial(t, k);
  if (!n || *n > cap)
    throw resource_error(std::string(who) +
                         ": subset count exceeds enumeration cap; "
                         "consider the Monte Carlo method");
  return *n;
}

void check_sizes(const TestMatrix& x, int s, const char* who) {
  if (s < 1) throw input_error(std::string(who) + ": s must be >= 1");
  if (s + 1 > x.n_items())
    throw input_error(std::string(who) + ": require s+1 <= t");
}

}  // namespace

std::vector<std::uint64_t> response_weight_histogram(const TestMatrix& x, int k,
                                                     std::uint64_t cap) {
  if (k < 0 || k > x.n_items())
    throw input_error("response_weight_histogram: k out of range");
  checked_subset_count(x.n_items(), k, cap, "response_weight_histogram");
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(x.n_tests()) + 1, 0);
  BitVector acc(x.n_tests());
  for_each_subset(x.n_items(), k, [&](std::span<const int> subset) {
    acc.clear();
    for (int j : subset) acc.or_with(x.column(j));
    ++hist[static_cast<std::size_t>(acc.weight())];
  });
  return hist;
}

std::uint64_t comp_rejection_count(const TestMatrix& x, int k, int s,
                                   std::uint64_t cap) {
  if (k < 0 || k > x.n_items())
    throw input_error("comp_rejection_count: k out of range");
  if (s < 1) throw input_error("comp_rejection_count: s must be >= 1");
  checked_subset_count(x.n_items(), k, cap, "comp_rejection_count");
  const int t = x.n_items();
  std::uint64_t rejections = 0;
  BitVector acc(x.n_tests());
  for_each_subset(t, k, [&](std::span<const int> subset) {
    acc.clear();
    for (int j : subset) acc.or_with(x.column(j));
    int covered = 0;
    for (int j = 0; j < t; ++j) {
      if (acc.covers(x.column(j)) && ++covered > s) {
        ++rejections;
        break;
      }
    }
  });
  return rejections;
}

ExactCounts exact_wdr_counts(const TestMatrix& x, int s, int threshold,
                             std::uint64_t cap) {
  check_sizes(x, s, "exact_wdr_counts");
  if (threshold < 0 || threshold > x.n_tests())
    throw input_error("exact_wdr_counts: threshold out of [0, N]");
  ExactCounts c;
  c.denom_s = checked_subset_count(x.n_items(), s, cap, "exact_wdr_counts");
  c.denom_s1 = checked_subset_count(x.n_items(), s + 1, cap, "exact_wdr_counts");

  const auto hist_s = response_weight_histogram(x, s, cap);
  const auto hist_s1 = response_weight_histogram(x, s + 1, cap);
  for (int w = threshold + 1; w <= x.n_tests(); ++w)
    c.b1_s += hist_s[static_cast<std::size_t>(w)];
  for (int w = 0; w <= threshold; ++w)
    c.b2_s1 += hist_s1[static_cast<std::size_t>(w)];
  return c;
}

UniversalError universal_error_wdr(const TestMatrix& x, int s, int threshold,
                                   std::uint64_t cap) {
  const ExactCounts c = exact_wdr_counts(x, s, threshold, cap);
  UniversalError u;
  u.errors.err_h0 = static_cast<double>(c.b1_s) / static_cast<double>(c.denom_s);
  u.errors.err_h1 =
      static_cast<double>(c.b2_s1) / static_cast<double>(c.denom_s1);
  u.eps = u.errors.max_error();
  return u;
}

ErrorPair exact_comp_error(const TestMatrix& x, int s, std::uint64_t cap) {
  check_sizes(x, s, "exact_comp_error");
  const std::uint64_t denom_s =
      checked_subset_count(x.n_items(), s, cap, "exact_comp_error");
  const std::uint64_t denom_s1 =
      checked_subset_count(x.n_items(), s + 1, cap, "exact_comp_error");
  const std::uint64_t rej_s = comp_rejection_count(x, s, s, cap);
  const std::uint64_t rej_s1 = comp_rejection_count(x, s + 1, s, cap);
  ErrorPair e;
  e.err_h0 = static_cast<double>(rej_s) / static_cast<double>(denom_s);
  e.err_h1 = static_cast<double>(denom_s1 - rej_s1) / static_cast<double>(denom_s1);
  return e;
}

namespace {

// Fraction of k-subsets the rule maps to H1.
double rejection_fraction(const TestMatrix& x, const DecisionRule& rule, int k,
                          std::uint64_t cap) {
  const std::uint64_t denom =
      checked_subset_count(x.n_items(), k, cap, "general_error");
  if (const auto* wdr = std::get_if<WdrRule>(&rule)) {
    const auto hist = response_weight_histogram(x, k, cap);
    std::uint64_t rej = 0;
    for (int w = wdr->threshold + 1; w <= x.n_tests(); ++w)
      rej += hist[static_cast<std::size_t>(w)];
    return static_cast<double>(rej) / static_cast<double>(denom);
  }
  const auto& comp = std::get<CompRule>(rule);
  const std::uint64_t rej =
      comp_rejection_count(x, k, comp.max_defectives, cap);
  return static_cast<double>(rej) / static_cast<double>(denom);
}

}  // namespace

ErrorPair general_error(const TestMatrix& x, const DecisionRule& rule,
                        const SizeDistribution& p, int s, std::uint64_t cap) {
  check_sizes(x, s, "general_error");
  if (p.max_size() != x.n_items())
    throw input_error("general_error: distribution length must be t+1");
  if (const auto* wdr = std::get_if<WdrRule>(&rule)) {
    if (wdr->threshold < 0 || wdr->threshold > x.n_tests())
      throw input_error("general_error: threshold out of [0, N]");
  }

  const auto& probs = p.probs();
  double mass_h0 = 0, mass_h1 = 0;
  for (int k = 0; k <= p.max_size(); ++k)
    (k <= s ? mass_h0 : mass_h1) += probs[static_cast<std::size_t>(k)];

  ErrorPair e;
  for (int k = 0; k <= p.max_size(); ++k) {
    const double pk = probs[static_cast<std::size_t>(k)];
    if (pk == 0.0) continue;
    const double frac = rejection_fraction(x, rule, k, cap);
    if (k <= s)
      e.err_h0 += pk / mass_h0 * frac;
    else
      e.err_h1 += pk / mass_h1 * (1.0 - frac);
  }
  if (mass_h0 == 0.0) e.err_h0 = 0.0;
  if (mass_h1 == 0.0) e.err_h1 = 0.0;
  return e;
}

MCEstimate mc_error(const TestMatrix& x, const DecisionRule& rule, int s,
                    int trials, std::uint64_t seed) {
  check_sizes(x, s, "mc_error");
  if (trials < 1) throw input_error("mc_error: trials must be >= 1");

  std::vector<int> pool(static_cast<std::size_t>(x.n_items()));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> draw;

  const auto run = [&](int size, std::uint64_t hyp_key) {
    std::uint64_t rejections = 0;
    const std::uint64_t key = derive_stream(seed, hyp_key);
    for (int i = 0; i < trials; ++i) {
      SplitMix64 g(derive_stream(key, static_cast<std::uint64_t>(i)));
      sample_distinct_into(g, size, pool, draw);
      const ResponseVector y = response(x, DefectiveSet(draw));
      if (decide(rule, x, y) == Hypothesis::h1) ++rejections;
    }
    return rejections;
  };

  const std::uint64_t rej_s = run(s, 0);
  const std::uint64_t rej_s1 = run(s + 1, 1);

  MCEstimate est;
  est.trials = trials;
  est.point.err_h0 = static_cast<double>(rej_s) / trials;
  est.point.err_h1 =
      static_cast<double>(static_cast<std::uint64_t>(trials) - rej_s1) / trials;
  const auto hw = [&](double p) {
    return 1.959963984540054 * std::sqrt(p * (1.0 - p) / trials);
  };
  est.half_width_h0 = hw(est.point.err_h0);
  est.half_width_h1 = hw(est.point.err_h1);
  return est;
}

}  // namespace gtht

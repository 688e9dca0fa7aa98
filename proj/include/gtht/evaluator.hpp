#pragma once

#include <cstdint>
#include <vector>

#include "gtht/core.hpp"

namespace gtht {

// The two conditional error probabilities of a decision rule.
struct ErrorPair {
  double err_h0 = 0;  // Pr{accept H1 | H0}
  double err_h1 = 0;  // Pr{accept H0 | H1}

  double max_error() const { return err_h0 > err_h1 ? err_h0 : err_h1; }
};

// Exact counts behind the worst-case WDR error: subsets of size s whose
// response is too heavy, and subsets of size s+1 whose response is light
// enough to pass.
struct ExactCounts {
  std::uint64_t b1_s = 0;     // |{S: |S|=s,   weight > T}|
  std::uint64_t b2_s1 = 0;    // |{S: |S|=s+1, weight <= T}|
  std::uint64_t denom_s = 0;  // C(t,s)
  std::uint64_t denom_s1 = 0; // C(t,s+1)
};

struct UniversalError {
  ErrorPair errors;
  double eps = 0;  // max of the two coordinates
};

struct MCEstimate {
  ErrorPair point;
  double half_width_h0 = 0;  // 95% normal-approximation half-widths
  double half_width_h1 = 0;
  int trials = 0;
};

// Counts of response weights over all k-subsets: result[w] = number of
// k-subsets whose response has weight w. Full enumeration in colex order;
// C(t,k) above `cap` raises resource_error.
std::vector<std::uint64_t> response_weight_histogram(
    const TestMatrix& x, int k, std::uint64_t cap = kDefaultEnumerationCap);

// Number of k-subsets whose response covers more than s columns.
std::uint64_t comp_rejection_count(const TestMatrix& x, int k, int s,
                                   std::uint64_t cap = kDefaultEnumerationCap);

ExactCounts exact_wdr_counts(const TestMatrix& x, int s, int threshold,
                             std::uint64_t cap = kDefaultEnumerationCap);

// Worst-case (over size distributions) WDR error: the conditional errors
// at sizes s and s+1, and their max.
UniversalError universal_error_wdr(const TestMatrix& x, int s, int threshold,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Both conditional errors of COMP at sizes s and s+1, by enumeration.
// (The H1-side count always comes out zero: a response covers every column
// of its own subset. It is still computed, not assumed.)
ErrorPair exact_comp_error(const TestMatrix& x, int s,
                           std::uint64_t cap = kDefaultEnumerationCap);

// p-weighted mixture of per-size exact error fractions. Sizes with zero
// hypothesis mass contribute zero per the convention Pr{H}=0 => error 0.
ErrorPair general_error(const TestMatrix& x, const DecisionRule& rule,
                        const SizeDistribution& p, int s,
                        std::uint64_t cap = kDefaultEnumerationCap);

// `trials` uniform s-subsets and `trials` uniform (s+1)-subsets, each trial
// on its own derived stream, so the result is a pure function of
// (inputs, seed) under any schedule.
MCEstimate mc_error(const TestMatrix& x, const DecisionRule& rule, int s,
                    int trials, std::uint64_t seed);

}  // namespace gtht

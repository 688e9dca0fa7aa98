#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gtht/core.hpp"

namespace gtht {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Constant-column-weight random design: every column is drawn independently
// and uniformly among the C(N, column_weight) binary columns of that weight.
struct EnsembleSpec {
  int n_tests = 0;       // N
  int n_items = 0;       // t
  int column_weight = 0; // w

  EnsembleSpec(int n_tests_, int n_items_, int column_weight_);
};

// floor(Q*N), clamped to at least 1: a zero-weight column would never test
// anything, and the analysis excludes that corner anyway.
int weight_from_Q(int n_tests, double q);

// Column j uses the stream derive_stream(seed, j), so the result is a pure
// function of (spec, seed) under any evaluation order.
TestMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed);

// Distribution of |column OR| for k independent columns of fixed weight.
struct UnionWeightPMF {
  int n_tests = 0;
  int k = 0;
  int column_weight = 0;
  std::vector<double> probs;  // index = weight, 0..n_tests

  double at(int weight) const { return probs.at(static_cast<std::size_t>(weight)); }
};

// Exact inclusion-exclusion count:
//   P(w) = C(N,w) * sum_{i=0}^{w-wbar} (-1)^i C(w,i) C(w-i,wbar)^k / C(N,wbar)^k.
// The alternating sum has huge terms of both signs, hence exact integers.
std::vector<Rational> union_weight_pmf_exact(int n_tests, int k, int column_weight);

UnionWeightPMF union_weight_pmf(int n_tests, int k, int column_weight);

}  // namespace gtht

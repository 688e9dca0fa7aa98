#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtht/evaluator.hpp"
#include "gtht/exponent.hpp"
#include "gtht/ensemble.hpp"
#include "gtht/rng.hpp"
#include "test_util.hpp"

using namespace gtht;
using test::all_ones_matrix;
using test::all_zero_matrix;
using test::matrix_3x4;

namespace {

// w=1 design on 10 tests and 15 items with the column load spread evenly:
// five tests carry two items, five carry one.
TestMatrix even_singleton_design() {
  TestMatrix x(10, 15);
  for (int j = 0; j < 15; ++j) x.set(j % 10, j, true);
  return x;
}

}  // namespace

TEST_CASE("exact_wdr_counts: all-zero columns never exceed any threshold") {
  const auto x = all_zero_matrix(4, 6);
  const auto c = exact_wdr_counts(x, 2, 0);
  CHECK(c.b1_s == 0);
  CHECK(c.b2_s1 == c.denom_s1);
  CHECK(c.denom_s == 15);
  CHECK(c.denom_s1 == 20);
  const auto u = universal_error_wdr(x, 2, 0);
  CHECK(u.errors.err_h0 == 0.0);
  CHECK(u.errors.err_h1 == 1.0);
  CHECK(u.eps == 1.0);
}

TEST_CASE("exact_wdr_counts: all-ones columns always exceed T = N-1") {
  const auto x = all_ones_matrix(5, 4);
  const auto c = exact_wdr_counts(x, 1, 4);  // every response has weight N = 5
  CHECK(c.b1_s == c.denom_s);
  CHECK(c.b2_s1 == 0);
  const auto c2 = exact_wdr_counts(x, 1, 5);  // T = N accepts everything
  CHECK(c2.b1_s == 0);
  CHECK(c2.b2_s1 == c2.denom_s1);
}

TEST_CASE("identity 5x5 at s=2, T=2 is error free") {
  const auto u = universal_error_wdr(TestMatrix::identity(5), 2, 2);
  CHECK(u.errors.err_h0 == 0.0);
  CHECK(u.errors.err_h1 == 0.0);
  CHECK(u.eps == 0.0);
}

TEST_CASE("even singleton design reaches the reference error at T = 2") {
  const auto x = even_singleton_design();
  const auto c = exact_wdr_counts(x, 2, 2);
  CHECK(c.b1_s == 0);
  CHECK(c.b2_s1 == 65);  // five doubled tests, each pairing with 13 third items
  CHECK(c.denom_s1 == 455);
  const auto u = universal_error_wdr(x, 2, 2);
  CHECK(u.eps == doctest::Approx(65.0 / 455.0).epsilon(1e-15));
}

TEST_CASE("exact_comp_error: disjunctive (s+1)-codes are error free") {
  const auto e = exact_comp_error(TestMatrix::identity(8), 2);
  CHECK(e.err_h0 == 0.0);
  CHECK(e.err_h1 == 0.0);
}

TEST_CASE("exact_comp_error: duplicated column always confuses s=1") {
  const auto x = test::from_column_strings({"10", "10"});
  const auto e = exact_comp_error(x, 1);
  CHECK(e.err_h0 == 1.0);
}

TEST_CASE("exact_comp_error: every pair of the 3x4 matrix covers a third column") {
  const auto e = exact_comp_error(matrix_3x4(), 2);
  CHECK(e.err_h0 == 1.0);
  CHECK(e.err_h1 == 0.0);
}

TEST_CASE("general_error: point mass at s reduces to the size-s fraction") {
  const auto x = matrix_3x4();
  const auto e = general_error(x, WdrRule{1}, SizeDistribution::point_mass(4, 2), 2);
  const auto u = universal_error_wdr(x, 2, 1);
  CHECK(e.err_h0 == u.errors.err_h0);
  CHECK(e.err_h1 == 0.0);  // no H1 mass
}

TEST_CASE("general_error: the 1/2-1/2 split equals the worst-case pair") {
  SplitMix64 g(31);
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = sample_matrix(EnsembleSpec(6, 9, 2), g.next());
    std::vector<double> p(10, 0.0);
    p[2] = p[3] = 0.5;
    const auto e = general_error(x, WdrRule{3}, SizeDistribution(p), 2);
    const auto u = universal_error_wdr(x, 2, 3);
    CHECK(e.err_h0 == doctest::Approx(u.errors.err_h0).epsilon(1e-14));
    CHECK(e.err_h1 == doctest::Approx(u.errors.err_h1).epsilon(1e-14));
  }
}

TEST_CASE("general_error: constant over mixtures supported on {s, s+1}") {
  const auto x = sample_matrix(EnsembleSpec(7, 10, 2), 77);
  SplitMix64 g(3);
  const auto ref = universal_error_wdr(x, 2, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = 0.05 + 0.9 * (static_cast<double>(g.next() >> 11) * 0x1.0p-53);
    std::vector<double> p(11, 0.0);
    p[2] = a;
    p[3] = 1.0 - a;
    const auto e = general_error(x, WdrRule{3}, SizeDistribution(p), 2);
    CHECK(e.err_h0 == doctest::Approx(ref.errors.err_h0).epsilon(1e-13));
    CHECK(e.err_h1 == doctest::Approx(ref.errors.err_h1).epsilon(1e-13));
  }
}

TEST_CASE("general_error: empty set never rejects under WDR") {
  const auto x = matrix_3x4();
  const auto e = general_error(x, WdrRule{0}, SizeDistribution::point_mass(4, 0), 2);
  CHECK(e.err_h0 == 0.0);
}

TEST_CASE("B-set counts satisfy the monotone size inequalities") {
  SplitMix64 g(41);
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 5 + static_cast<int>(g.bounded(4));
    const int t = 8 + static_cast<int>(g.bounded(5));
    const auto x = sample_matrix(EnsembleSpec(n, t, 1 + static_cast<int>(g.bounded(3))), g.next());
    const int s = 2, threshold = static_cast<int>(g.bounded(static_cast<std::uint64_t>(n) + 1));
    std::uint64_t b1[3], b2[3];
    for (int d = 0; d < 3; ++d) {
      const int k = s + d;
      const auto hist = response_weight_histogram(x, k);
      std::uint64_t heavy = 0, light = 0;
      for (int w = 0; w <= n; ++w)
        (w > threshold ? heavy : light) += hist[static_cast<std::size_t>(w)];
      b1[d] = heavy;
      b2[d] = light;
    }
    for (int d = 0; d < 2; ++d) {
      const int k = s + d;
      // |B1_{k+1}| >= |B1_k| (t-k)/(k+1) and |B2_k| >= |B2_{k+1}| (k+1)/(t-k)
      CHECK(b1[d + 1] * static_cast<std::uint64_t>(k + 1) >=
            b1[d] * static_cast<std::uint64_t>(t - k));
      CHECK(b2[d] * static_cast<std::uint64_t>(t - k) >=
            b2[d + 1] * static_cast<std::uint64_t>(k + 1));
    }
  }
}

TEST_CASE("universal errors dominate the converse bound") {
  SplitMix64 g(59);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(g.bounded(4));   // small N keeps the bound positive
    const int t = 10 + static_cast<int>(g.bounded(8));
    const int s = 2;
    const double bound = lower_bound_error(n, t, s);
    const auto x = sample_matrix(EnsembleSpec(n, t, 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)))), g.next());
    for (int threshold = 0; threshold <= n; ++threshold)
      CHECK(universal_error_wdr(x, s, threshold).eps >= bound - 1e-12);
    CHECK(exact_comp_error(x, s).max_error() >= bound - 1e-12);
  }
}

TEST_CASE("mc_error: degenerate all-zero design") {
  const auto x = all_zero_matrix(4, 6);
  const auto est = mc_error(x, WdrRule{0}, 2, 500, 99);
  CHECK(est.point.err_h0 == 0.0);
  CHECK(est.point.err_h1 == 1.0);
  CHECK(est.half_width_h0 == 0.0);
  CHECK(est.half_width_h1 == 0.0);
  CHECK(est.trials == 500);
}

TEST_CASE("mc_error agrees with exact within its confidence width") {
  const auto x = sample_matrix(EnsembleSpec(8, 12, 2), 2718);
  const int s = 2, threshold = 3;
  const auto exact = universal_error_wdr(x, s, threshold).errors;
  const auto est = mc_error(x, WdrRule{threshold}, s, 20000, 31415);
  CHECK(std::abs(est.point.err_h0 - exact.err_h0) <= est.half_width_h0 + 1e-12);
  CHECK(std::abs(est.point.err_h1 - exact.err_h1) <= est.half_width_h1 + 1e-12);
}

TEST_CASE("mc_error is deterministic in the seed") {
  const auto x = sample_matrix(EnsembleSpec(6, 9, 2), 5);
  const auto a = mc_error(x, CompRule{2}, 2, 1000, 123);
  const auto b = mc_error(x, CompRule{2}, 2, 1000, 123);
  CHECK(a.point.err_h0 == b.point.err_h0);
  CHECK(a.point.err_h1 == b.point.err_h1);
}

TEST_CASE("evaluator rejects bad arguments and oversized enumerations") {
  const auto x = matrix_3x4();
  CHECK_THROWS_AS(exact_wdr_counts(x, 2, 4), input_error);
  CHECK_THROWS_AS(exact_wdr_counts(x, 4, 1), input_error);
  CHECK_THROWS_AS(exact_wdr_counts(x, 2, 1, /*cap=*/3), resource_error);
  CHECK_THROWS_AS(exact_comp_error(x, 2, /*cap=*/3), resource_error);
  CHECK_THROWS_AS(mc_error(x, WdrRule{1}, 2, 0, 1), input_error);
  std::vector<double> p(4, 0.25);  // wrong length: needs t+1 = 5
  CHECK_THROWS_AS(general_error(x, WdrRule{1}, SizeDistribution(p), 2), input_error);
  CHECK_THROWS_AS(SizeDistribution(std::vector<double>{0.5, 0.4}), input_error);
  CHECK_THROWS_AS(SizeDistribution(std::vector<double>{1.5, -0.5}), input_error);
}

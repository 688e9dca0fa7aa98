#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gtht/bits.hpp"
#include "gtht/errors.hpp"

namespace gtht {

// Default budget for exhaustive enumerations (counted in subset evaluations,
// or subset*column checks for the disjunctive-code test).
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// N x t binary test design. Row i, column j is 1 iff item j takes part in
// test i. Columns are the unit of access; they are stored packed so that
// OR / cover / popcount run wordwise. Item indices are 0-based here;
// 1-based conversion happens only at the text interfaces.
class TestMatrix {
 public:
  TestMatrix() = default;
  TestMatrix(int n_tests, int n_items);
  static TestMatrix from_columns(int n_tests, std::vector<BitVector> columns);
  static TestMatrix identity(int n);

  int n_tests() const { return n_tests_; }
  int n_items() const { return static_cast<int>(cols_.size()); }

  bool get(int test, int item) const { return column(item).get(test); }
  void set(int test, int item, bool v = true);

  const BitVector& column(int item) const;
  int column_weight(int item) const { return column(item).weight(); }

  // The common column weight, or nullopt if columns differ (or t == 0).
  std::optional<int> uniform_column_weight() const;

  friend bool operator==(const TestMatrix&, const TestMatrix&) = default;

 private:
  int n_tests_ = 0;
  std::vector<BitVector> cols_;
};

// Sorted set of 0-based item indices; may be empty. Duplicate or negative
// indices are rejected. Range checks against a concrete matrix happen in
// the operations that take one.
class DefectiveSet {
 public:
  DefectiveSet() = default;
  explicit DefectiveSet(std::vector<int> members);
  static DefectiveSet from_one_based(std::vector<int> members);

  std::span<const int> members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }

 private:
  std::vector<int> members_;
};

// Outcome column of the N pooled tests, with the number of positive tests
// cached at construction.
class ResponseVector {
 public:
  ResponseVector() = default;
  explicit ResponseVector(BitVector bits)
      : bits_(std::move(bits)), weight_(bits_.weight()) {}

  const BitVector& bits() const { return bits_; }
  int size() const { return bits_.size(); }
  int weight() const { return weight_; }

  friend bool operator==(const ResponseVector&, const ResponseVector&) = default;

 private:
  BitVector bits_;
  int weight_ = 0;
};

// Mixture weights over defective-set sizes: probs[k] = p_k, k = 0..t.
class SizeDistribution {
 public:
  explicit SizeDistribution(std::vector<double> probs);
  static SizeDistribution point_mass(int t, int k);

  const std::vector<double>& probs() const { return probs_; }
  int max_size() const { return static_cast<int>(probs_.size()) - 1; }

 private:
  std::vector<double> probs_;
};

enum class Hypothesis { h0, h1 };

// Accept H0 iff at most `max_defectives` columns are covered by the response.
struct CompRule {
  int max_defectives = 1;  // s
};

// Accept H0 iff the response weight is at most `threshold`.
struct WdrRule {
  int threshold = 0;  // T
};

using DecisionRule = std::variant<CompRule, WdrRule>;

// Bitwise OR of the columns indexed by S; all-zero for the empty set.
ResponseVector response(const TestMatrix& x, const DefectiveSet& s);

bool covers(const ResponseVector& u, const ResponseVector& v);

// Items whose column is covered by y, ascending.
std::vector<int> covered_columns(const TestMatrix& x, const ResponseVector& y);

// WDR ignores the matrix contents but still validates the length contract.
Hypothesis decide(const DecisionRule& rule, const TestMatrix& x,
                  const ResponseVector& y);

struct DisjunctiveWitness {
  std::vector<int> subset;  // the s-subset (0-based, sorted)
  int covered_item = -1;    // an item outside it whose column is covered
};

struct DisjunctiveResult {
  bool is_code = false;
  std::optional<DisjunctiveWitness> witness;
};

// Exhaustive check over all s-subsets, short-circuiting on the first
// violation. Work is C(t,s)*t column checks; throws resource_error when
// that exceeds `cap`.
DisjunctiveResult check_disjunctive(const TestMatrix& x, int s,
                                    std::uint64_t cap = kDefaultEnumerationCap);

bool is_disjunctive_code(const TestMatrix& x, int s,
                         std::uint64_t cap = kDefaultEnumerationCap);

// --- matrix text format -----------------------------------------------
//
// Line 1: "N t" in decimal, single space. Lines 2..N+1: exactly t
// characters from {0,1}; row i lists x_i(1..t). No other characters,
// no trailing whitespace.

std::string to_text(const TestMatrix& x);
TestMatrix parse_matrix_text(std::string_view text);
TestMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const TestMatrix& x, const std::filesystem::path& path);

}  // namespace gtht

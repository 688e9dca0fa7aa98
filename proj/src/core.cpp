#include "gtht/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gtht/subsets.hpp"

namespace gtht {

TestMatrix::TestMatrix(int n_tests, int n_items) : n_tests_(n_tests) {
  if (n_tests < 1 || n_items < 1)
    throw input_error("TestMatrix: dimensions must be positive");
  cols_.assign(static_cast<std::size_t>(n_items), BitVector(n_tests));
}

TestMatrix TestMatrix::from_columns(int n_tests, std::vector<BitVector> columns) {
  if (n_tests < 1 || columns.empty())
    throw input_error("TestMatrix: dimensions must be positive");
  for (const auto& c : columns)
    if (c.size() != n_tests)
      throw input_error("TestMatrix: column length does not match n_tests");
  TestMatrix x;
  x.n_tests_ = n_tests;
  x.cols_ = std::move(columns);
  return x;
}

TestMatrix TestMatrix::identity(int n) {
  TestMatrix x(n, n);
  for (int i = 0; i < n; ++i) x.set(i, i, true);
  return x;
}

void TestMatrix::set(int test, int item, bool v) {
  if (item < 0 || item >= n_items())
    throw input_error("TestMatrix: item index out of range");
  cols_[static_cast<std::size_t>(item)].set(test, v);
}

const BitVector& TestMatrix::column(int item) const {
  if (item < 0 || item >= n_items())
    throw input_error("TestMatrix: item index out of range");
  return cols_[static_cast<std::size_t>(item)];
}

std::optional<int> TestMatrix::uniform_column_weight() const {
  if (cols_.empty()) return std::nullopt;
  const int w = cols_[0].weight();
  for (const auto& c : cols_)
    if (c.weight() != w) return std::nullopt;
  return w;
}

SizeDistribution::SizeDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw input_error("SizeDistribution: empty vector");
  double sum = 0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw input_error("SizeDistribution: negative mass");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw input_error("SizeDistribution: masses must sum to 1");
}

SizeDistribution SizeDistribution::point_mass(int t, int k) {
  if (k < 0 || k > t) throw input_error("SizeDistribution: size out of range");
  std::vector<double> p(static_cast<std::size_t>(t) + 1, 0.0);
  p[static_cast<std::size_t>(k)] = 1.0;
  return SizeDistribution(std::move(p));
}

DefectiveSet::DefectiveSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0) throw input_error("DefectiveSet: negative index");
    if (i > 0 && members_[i] == members_[i - 1])
      throw input_error("DefectiveSet: duplicate index");
  }
}

DefectiveSet DefectiveSet::from_one_based(std::vector<int> members) {
  for (int& m : members) {
    if (m < 1) throw input_error("DefectiveSet: 1-based index must be >= 1");
    --m;
  }
  return DefectiveSet(std::move(members));
}

ResponseVector response(const TestMatrix& x, const DefectiveSet& s) {
  BitVector acc(x.n_tests());
  for (int j : s.members()) {
    if (j >= x.n_items())
      throw input_error("response: item index out of range");
    acc.or_with(x.column(j));
  }
  return ResponseVector(std::move(acc));
}

bool covers(const ResponseVector& u, const ResponseVector& v) {
  return u.bits().covers(v.bits());
}

std::vector<int> covered_columns(const TestMatrix& x, const ResponseVector& y) {
  if (y.size() != x.n_tests())
    throw input_error("covered_columns: response length does not match n_tests");
  std::vector<int> out;
  for (int j = 0; j < x.n_items(); ++j)
    if (y.bits().covers(x.column(j))) out.push_back(j);
  return out;
}

Hypothesis decide(const DecisionRule& rule, const TestMatrix& x,
                  const ResponseVector& y) {
  if (y.size() != x.n_tests())
    throw input_error("decide: response length does not match n_tests");
  if (const auto* wdr = std::get_if<WdrRule>(&rule)) {
    if (wdr->threshold < 0 || wdr->threshold > y.size())
      throw input_error("decide: WDR threshold out of [0, N]");
    return y.weight() <= wdr->threshold ? Hypothesis::h0 : Hypothesis::h1;
  }
  const auto& comp = std::get<CompRule>(rule);
  if (comp.max_defectives < 1)
    throw input_error("decide: COMP parameter s must be >= 1");
  int covered = 0;
  for (int j = 0; j < x.n_items(); ++j) {
    if (y.bits().covers(x.column(j))) {
      if (++covered > comp.max_defectives) return Hypothesis::h1;
    }
  }
  return Hypothesis::h0;
}

DisjunctiveResult check_disjunctive(const TestMatrix& x, int s, std::uint64_t cap) {
  const int t = x.n_items();
  if (s < 1 || s > t - 1)
    throw input_error("check_disjunctive: require 1 <= s <= t-1");
  const auto n_subsets = binomial(t, s);
  if (!n_subsets || *n_subsets > cap / static_cast<std::uint64_t>(t))
    throw resource_error("check_disjunctive: C(t,s)*t exceeds enumeration cap");

  DisjunctiveResult result;
  result.is_code = true;
  BitVector acc(x.n_tests());
  for_each_subset(t, s, [&](std::span<const int> subset) {
    if (!result.is_code) return;  // short-circuit after first witness
    acc.clear();
    for (int j : subset) acc.or_with(x.column(j));
    for (int j = 0; j < t; ++j) {
      if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
      if (acc.covers(x.column(j))) {
        result.is_code = false;
        result.witness = DisjunctiveWitness{
            std::vector<int>(subset.begin(), subset.end()), j};
        return;
      }
    }
  });
  return result;
}

bool is_disjunctive_code(const TestMatrix& x, int s, std::uint64_t cap) {
  return check_disjunctive(x, s, cap).is_code;
}

std::string to_text(const TestMatrix& x) {
  std::string out;
  out += std::to_string(x.n_tests());
  out += ' ';
  out += std::to_string(x.n_items());
  out += '\n';
  for (int i = 0; i < x.n_tests(); ++i) {
    for (int j = 0; j < x.n_items(); ++j) out += x.get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw io_error("matrix parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

TestMatrix parse_matrix_text(std::string_view text) {
  // split into lines; the final line may omit its newline
  std::size_t pos = 0;
  int line_no = 1;

  const auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= text.size()) return std::nullopt;
    const std::size_t nl = text.find('\n', pos);
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    return line;
  };

  const auto header = next_line();
  if (!header) parse_fail(1, "empty input");
  int n = 0, t = 0;
  {
    const std::string_view h = *header;
    std::size_t i = 0;
    const auto read_int = [&](int& out) {
      std::size_t start = i;
      while (i < h.size() && h[i] >= '0' && h[i] <= '9') ++i;
      if (i == start || i - start > 9) parse_fail(1, "expected decimal dimension");
      out = 0;
      for (std::size_t k = start; k < i; ++k) out = out * 10 + (h[k] - '0');
    };
    read_int(n);
    if (i >= h.size() || h[i] != ' ') parse_fail(1, "expected single space between N and t");
    ++i;
    read_int(t);
    if (i != h.size()) parse_fail(1, "trailing characters after dimensions");
    if (n < 1 || t < 1) parse_fail(1, "dimensions must be positive");
  }

  TestMatrix x(n, t);
  for (int i = 0; i < n; ++i) {
    ++line_no;
    const auto row = next_line();
    if (!row) parse_fail(line_no, "missing row");
    if (static_cast<int>(row->size()) != t)
      parse_fail(line_no, "expected exactly " + std::to_string(t) + " characters");
    for (int j = 0; j < t; ++j) {
      const char c = (*row)[static_cast<std::size_t>(j)];
      if (c == '1')
        x.set(i, j, true);
      else if (c != '0')
        parse_fail(line_no, std::string("invalid character '") + c + "'");
    }
  }
  if (pos < text.size()) parse_fail(line_no + 1, "unexpected trailing content");
  return x;
}

TestMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open matrix file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix_text(ss.str());
  } catch (const io_error& e) {
    throw io_error(path.string() + ": " + e.what());
  }
}

void save_matrix(const TestMatrix& x, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + path.string());
  out << to_text(x);
  if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace gtht

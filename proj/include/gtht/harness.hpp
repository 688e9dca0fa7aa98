#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtht/core.hpp"
#include "gtht/evaluator.hpp"

namespace gtht {

enum class RuleKind { comp, wdr };
enum class EvalMethod { exact, monte_carlo };

std::string to_string(RuleKind k);
std::string to_string(EvalMethod m);

// One best-matrix search: sample `repeats` random designs per candidate
// column weight, evaluate the worst-case error of the rule for every
// candidate threshold, and keep the minimum.
struct SearchConfig {
  int s = 2;
  int n_items = 0;  // t
  int n_tests = 0;  // N
  RuleKind rule = RuleKind::wdr;
  std::vector<int> weights;     // empty = all of 1..max(1,N-1)
  std::vector<int> thresholds;  // WDR only; empty = all of 0..N
  int repeats = 1000;
  std::uint64_t master_seed = 0;
  EvalMethod method = EvalMethod::exact;
  int mc_trials = 1000;
  std::uint64_t cap = kDefaultEnumerationCap;
  int threads = 1;
};

struct SearchResult {
  TestMatrix best_matrix;
  int best_w = 0;
  int best_threshold = -1;  // -1 for COMP
  ErrorPair errors;
  double eps = 1.0;
  std::uint64_t matrix_seed = 0;  // seed that regenerates best_matrix
  int repetition = 0;
  std::vector<std::string> skipped;  // infeasible candidates, with reasons
};

// Deterministic given the config: matrix r uses derive_stream(master_seed,r),
// and ties in eps break toward the earliest (weight, threshold, repetition)
// candidate in iteration order regardless of thread count.
SearchResult best_matrix_search(const SearchConfig& config);

// --- result tables ------------------------------------------------------

struct Table1Row {
  int s = 0;
  double e_wdr = 0, tau_star = 0, q_star = 0;
  double e_comp0 = 0, c_comp = 0, r_wdr = 0;
};

std::vector<Table1Row> table1(const std::vector<int>& s_list);
std::string table1_to_csv(const std::vector<Table1Row>& rows);
std::vector<Table1Row> parse_table1_csv(std::string_view csv);

struct Table2Row {
  int n_tests = 0, n_items = 0, s = 0;
  RuleKind rule = RuleKind::wdr;
  int w = 0, threshold = -1;
  double err_h0 = 0, err_h1 = 0, eps = 0;
  EvalMethod method = EvalMethod::exact;
  int trials = 0;  // 0 for exact
  std::uint64_t master_seed = 0;
};

Table2Row to_table2_row(const SearchConfig& config, const SearchResult& result);
std::vector<Table2Row> table2(const std::vector<SearchConfig>& scenarios);

inline constexpr const char* kTable2CsvHeader =
    "N,t,s,rule,w,T,err_h0,err_h1,eps,method,trials,master_seed";
std::string table2_row_csv(const Table2Row& row);
std::string table2_to_csv(const std::vector<Table2Row>& rows);

// --- simulation configs -------------------------------------------------
//
// Flat key=value text, '#' comments. Keys: s, t, N, rules, weights,
// thresholds, repeats, method, trials, seed, cap. t and N accept comma
// lists; weights/thresholds accept comma lists or "auto". One scenario is
// produced per (t, N, rule). Unknown keys are rejected.

struct SimulationPlan {
  std::vector<SearchConfig> scenarios;
  std::vector<std::pair<std::string, std::string>> config_echo;  // as parsed
};

SimulationPlan parse_simulation_config(std::string_view text);
SimulationPlan load_simulation_config(const std::filesystem::path& path);

// JSON run manifest: the echoed config, master seed, tool version, timestamp.
std::string manifest_json(const SimulationPlan& plan, int n_rows);

// Deterministic number formatting shared by all CSV writers.
std::string format_double(double v);

}  // namespace gtht

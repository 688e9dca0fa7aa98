#include "gtht/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gtht/ensemble.hpp"
#include "gtht/exponent.hpp"
#include "gtht/rng.hpp"
#include "gtht/subsets.hpp"
#include "gtht/version.hpp"

namespace gtht {

std::string to_string(RuleKind k) { return k == RuleKind::comp ? "comp" : "wdr"; }
std::string to_string(EvalMethod m) {
  return m == EvalMethod::exact ? "exact" : "mc";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

// Seed for the Monte Carlo evaluation of one sampled matrix, independent of
// the column-sampling streams of the same matrix_seed.
std::uint64_t mc_eval_seed(std::uint64_t matrix_seed) {
  return derive_stream(matrix_seed, 0x6d63);  // "mc"
}

struct BestCandidate {
  bool valid = false;
  double eps = 0;
  std::array<int, 3> key{};  // (weight idx, threshold idx, repetition)
  int w = 0, threshold = -1, repetition = 0;
  std::uint64_t matrix_seed = 0;
  ErrorPair errors;

  void offer(double e, std::array<int, 3> k, int w_, int thr, int rep,
             std::uint64_t mseed, const ErrorPair& errs) {
    if (valid && (e > eps || (e == eps && k >= key))) return;
    valid = true;
    eps = e;
    key = k;
    w = w_;
    threshold = thr;
    repetition = rep;
    matrix_seed = mseed;
    errors = errs;
  }

  void merge(const BestCandidate& o) {
    if (o.valid) offer(o.eps, o.key, o.w, o.threshold, o.repetition,
                       o.matrix_seed, o.errors);
  }
};

// Response-weight counts over `trials` random subsets of the given size,
// trial i on stream derive(derive(seed, hyp_key), i); matches the sampling
// scheme of mc_error so that results are cross-reproducible.
std::vector<std::uint64_t> mc_weight_histogram(const TestMatrix& x, int size,
                                               int trials, std::uint64_t seed,
                                               std::uint64_t hyp_key,
                                               std::vector<int>& pool,
                                               std::vector<int>& draw) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(x.n_tests()) + 1, 0);
  const std::uint64_t key = derive_stream(seed, hyp_key);
  BitVector acc(x.n_tests());
  for (int i = 0; i < trials; ++i) {
    SplitMix64 g(derive_stream(key, static_cast<std::uint64_t>(i)));
    sample_distinct_into(g, size, pool, draw);
    acc.clear();
    for (int j : draw) acc.or_with(x.column(j));
    ++hist[static_cast<std::size_t>(acc.weight())];
  }
  return hist;
}

void validate_search_config(const SearchConfig& c) {
  if (c.s < 1) throw input_error("search: s must be >= 1");
  if (c.n_items < c.s + 1) throw input_error("search: require t >= s+1");
  if (c.n_tests < 1) throw input_error("search: N must be positive");
  if (c.repeats < 1) throw input_error("search: repeats must be >= 1");
  if (c.method == EvalMethod::monte_carlo && c.mc_trials < 1)
    throw input_error("search: mc_trials must be >= 1");
  for (int w : c.weights)
    if (w < 1 || w > c.n_tests)
      throw input_error("search: weight candidates must lie in [1, N]");
  for (int thr : c.thresholds)
    if (thr < 0 || thr > c.n_tests)
      throw input_error("search: thresholds must lie in [0, N]");
}

}  // namespace

SearchResult best_matrix_search(const SearchConfig& config) {
  validate_search_config(config);
  const int n = config.n_tests, t = config.n_items, s = config.s;

  std::vector<int> weights = config.weights;
  if (weights.empty()) {
    for (int w = 1; w <= std::max(1, n - 1); ++w) weights.push_back(w);
  }
  std::vector<int> thresholds = config.thresholds;
  if (config.rule == RuleKind::wdr && thresholds.empty()) {
    for (int thr = 0; thr <= n; ++thr) thresholds.push_back(thr);
  }

  SearchResult result;
  BestCandidate best;

  for (std::size_t iw = 0; iw < weights.size(); ++iw) {
    const int w = weights[iw];
    if (config.method == EvalMethod::exact) {
      const auto ns = binomial(t, s), ns1 = binomial(t, s + 1);
      if (!ns || !ns1 || *ns > config.cap || *ns1 > config.cap) {
        result.skipped.push_back("w=" + std::to_string(w) +
                                 ": subset count exceeds enumeration cap");
        continue;
      }
    }
    const EnsembleSpec spec(n, t, w);

    const auto run_range = [&](int r_begin, int r_end, BestCandidate& local) {
      std::vector<int> pool(static_cast<std::size_t>(t));
      std::iota(pool.begin(), pool.end(), 0);
      std::vector<int> draw;
      for (int r = r_begin; r < r_end; ++r) {
        const std::uint64_t mseed =
            derive_stream(config.master_seed, static_cast<std::uint64_t>(r));
        const TestMatrix x = sample_matrix(spec, mseed);
        if (config.rule == RuleKind::wdr) {
          std::vector<std::uint64_t> hist_s, hist_s1;
          double den_s, den_s1;
          if (config.method == EvalMethod::exact) {
            hist_s = response_weight_histogram(x, s, config.cap);
            hist_s1 = response_weight_histogram(x, s + 1, config.cap);
            den_s = static_cast<double>(*binomial(t, s));
            den_s1 = static_cast<double>(*binomial(t, s + 1));
          } else {
            const std::uint64_t eseed = mc_eval_seed(mseed);
            hist_s = mc_weight_histogram(x, s, config.mc_trials, eseed, 0,
                                         pool, draw);
            hist_s1 = mc_weight_histogram(x, s + 1, config.mc_trials, eseed, 1,
                                          pool, draw);
            den_s = den_s1 = static_cast<double>(config.mc_trials);
          }
          // suffix/prefix sums turn one enumeration into all thresholds
          std::vector<std::uint64_t> heavy(hist_s.size() + 1, 0);
          for (std::size_t v = hist_s.size(); v-- > 0;)
            heavy[v] = heavy[v + 1] + hist_s[v];
          std::uint64_t light = 0;
          std::vector<std::uint64_t> light_upto(hist_s1.size(), 0);
          for (std::size_t v = 0; v < hist_s1.size(); ++v) {
            light += hist_s1[v];
            light_upto[v] = light;
          }
          for (std::size_t it = 0; it < thresholds.size(); ++it) {
            const int thr = thresholds[it];
            ErrorPair e;
            e.err_h0 = static_cast<double>(
                           heavy[static_cast<std::size_t>(thr) + 1]) /
                       den_s;
            e.err_h1 = static_cast<double>(
                           light_upto[static_cast<std::size_t>(thr)]) /
                       den_s1;
            local.offer(e.max_error(),
                        {static_cast<int>(iw), static_cast<int>(it), r}, w,
                        thr, r, mseed, e);
          }
        } else {
          ErrorPair e;
          if (config.method == EvalMethod::exact) {
            e = exact_comp_error(x, s, config.cap);
          } else {
            e = mc_error(x, CompRule{s}, s, config.mc_trials,
                         mc_eval_seed(mseed))
                    .point;
          }
          local.offer(e.max_error(), {static_cast<int>(iw), 0, r}, w, -1, r,
                      mseed, e);
        }
      }
    };

    const int n_threads =
        std::max(1, std::min(config.threads, config.repeats));
    if (n_threads == 1) {
      run_range(0, config.repeats, best);
    } else {
      std::vector<BestCandidate> locals(static_cast<std::size_t>(n_threads));
      std::vector<std::thread> pool_threads;
      const int chunk = (config.repeats + n_threads - 1) / n_threads;
      for (int ti = 0; ti < n_threads; ++ti) {
        const int r0 = ti * chunk;
        const int r1 = std::min(config.repeats, r0 + chunk);
        if (r0 >= r1) break;
        pool_threads.emplace_back(run_range, r0, r1,
                                  std::ref(locals[static_cast<std::size_t>(ti)]));
      }
      for (auto& th : pool_threads) th.join();
      for (const auto& lc : locals) best.merge(lc);
    }
  }

  if (!best.valid)
    throw resource_error("search: every weight candidate was skipped");

  result.best_w = best.w;
  result.best_threshold = best.threshold;
  result.errors = best.errors;
  result.eps = best.eps;
  result.matrix_seed = best.matrix_seed;
  result.repetition = best.repetition;
  result.best_matrix =
      sample_matrix(EnsembleSpec(n, t, best.w), best.matrix_seed);
  return result;
}

std::vector<Table1Row> table1(const std::vector<int>& s_list) {
  std::vector<Table1Row> rows;
  rows.reserve(s_list.size());
  for (int s : s_list) {
    Table1Row row;
    row.s = s;
    const WdrExponentResult w = exponent_wdr(s);
    row.e_wdr = w.exponent;
    row.tau_star = w.tau_star;
    row.q_star = w.q_star;
    row.e_comp0 = exponent_comp(s, 0.0).exponent;
    row.c_comp = capacity_comp(s);
    row.r_wdr = rate_wdr(s);
    rows.push_back(row);
  }
  return rows;
}

std::string table1_to_csv(const std::vector<Table1Row>& rows) {
  std::string out = "s,E_wdr,tau_star,Q_star,E_comp0,C_comp,R_wdr\n";
  for (const auto& r : rows) {
    out += std::to_string(r.s);
    for (double v : {r.e_wdr, r.tau_star, r.q_star, r.e_comp0, r.c_comp, r.r_wdr}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.emplace_back(line.substr(pos));
      break;
    }
    out.emplace_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

double parse_double_field(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw io_error(std::string("bad numeric field for ") + what + ": '" + s + "'");
  }
}

}  // namespace

std::vector<Table1Row> parse_table1_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) ||
      line != "s,E_wdr,tau_star,Q_star,E_comp0,C_comp,R_wdr")
    throw io_error("table1 csv: bad or missing header");
  std::vector<Table1Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw io_error("table1 csv: expected 7 fields");
    Table1Row r;
    r.s = static_cast<int>(parse_double_field(f[0], "s"));
    r.e_wdr = parse_double_field(f[1], "E_wdr");
    r.tau_star = parse_double_field(f[2], "tau_star");
    r.q_star = parse_double_field(f[3], "Q_star");
    r.e_comp0 = parse_double_field(f[4], "E_comp0");
    r.c_comp = parse_double_field(f[5], "C_comp");
    r.r_wdr = parse_double_field(f[6], "R_wdr");
    rows.push_back(r);
  }
  return rows;
}

Table2Row to_table2_row(const SearchConfig& config, const SearchResult& result) {
  Table2Row row;
  row.n_tests = config.n_tests;
  row.n_items = config.n_items;
  row.s = config.s;
  row.rule = config.rule;
  row.w = result.best_w;
  row.threshold = result.best_threshold;
  row.err_h0 = result.errors.err_h0;
  row.err_h1 = result.errors.err_h1;
  row.eps = result.eps;
  row.method = config.method;
  row.trials = config.method == EvalMethod::monte_carlo ? config.mc_trials : 0;
  row.master_seed = config.master_seed;
  return row;
}

std::vector<Table2Row> table2(const std::vector<SearchConfig>& scenarios) {
  std::vector<Table2Row> rows;
  rows.reserve(scenarios.size());
  for (const auto& config : scenarios)
    rows.push_back(to_table2_row(config, best_matrix_search(config)));
  return rows;
}

std::string table2_row_csv(const Table2Row& r) {
  std::string out = std::to_string(r.n_tests);
  out += ',' + std::to_string(r.n_items);
  out += ',' + std::to_string(r.s);
  out += ',' + to_string(r.rule);
  out += ',' + std::to_string(r.w);
  out += ',';
  if (r.threshold >= 0) out += std::to_string(r.threshold);
  out += ',' + format_double(r.err_h0);
  out += ',' + format_double(r.err_h1);
  out += ',' + format_double(r.eps);
  out += ',' + to_string(r.method);
  out += ',';
  if (r.trials > 0) out += std::to_string(r.trials);
  out += ',' + std::to_string(r.master_seed);
  out += '\n';
  return out;
}

std::string table2_to_csv(const std::vector<Table2Row>& rows) {
  std::string out = std::string(kTable2CsvHeader) + "\n";
  for (const auto& r : rows) out += table2_row_csv(r);
  return out;
}

namespace {

int parse_int(const std::string& v, const char* key) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw io_error(std::string("config: bad integer for ") + key + ": '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& v, const char* key) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw io_error(std::string("config: bad unsigned for ") + key + ": '" + v + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& v, const char* key) {
  std::vector<int> out;
  for (const auto& piece : split(v, ',')) out.push_back(parse_int(piece, key));
  return out;
}

}  // namespace

SimulationPlan parse_simulation_config(std::string_view text) {
  SimulationPlan plan;
  int s = -1, repeats = 1000, trials = 1000;
  std::vector<int> ts, ns, weights, thresholds;
  bool weights_auto = true, thresholds_auto = true;
  std::vector<RuleKind> rules{RuleKind::wdr, RuleKind::comp};
  EvalMethod method = EvalMethod::exact;
  std::uint64_t seed = 0, cap = kDefaultEnumerationCap;
  bool have_seed = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw io_error("config line " + std::to_string(line_no) +
                     ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    plan.config_echo.emplace_back(key, value);

    if (key == "s") {
      s = parse_int(value, "s");
    } else if (key == "t") {
      ts = parse_int_list(value, "t");
    } else if (key == "N") {
      ns = parse_int_list(value, "N");
    } else if (key == "rules") {
      rules.clear();
      for (const auto& r : split(value, ',')) {
        if (r == "wdr")
          rules.push_back(RuleKind::wdr);
        else if (r == "comp")
          rules.push_back(RuleKind::comp);
        else
          throw io_error("config line " + std::to_string(line_no) +
                         ": unknown rule '" + r + "'");
      }
    } else if (key == "weights") {
      weights_auto = (value == "auto");
      if (!weights_auto) weights = parse_int_list(value, "weights");
    } else if (key == "thresholds") {
      thresholds_auto = (value == "auto");
      if (!thresholds_auto) thresholds = parse_int_list(value, "thresholds");
    } else if (key == "repeats") {
      repeats = parse_int(value, "repeats");
    } else if (key == "method") {
      if (value == "exact")
        method = EvalMethod::exact;
      else if (value == "mc")
        method = EvalMethod::monte_carlo;
      else
        throw io_error("config line " + std::to_string(line_no) +
                       ": unknown method '" + value + "'");
    } else if (key == "trials") {
      trials = parse_int(value, "trials");
    } else if (key == "seed") {
      seed = parse_u64(value, "seed");
      have_seed = true;
    } else if (key == "cap") {
      cap = parse_u64(value, "cap");
    } else {
      throw io_error("config line " + std::to_string(line_no) +
                     ": unknown key '" + key + "'");
    }
  }

  if (s < 1) throw io_error("config: missing or invalid 's'");
  if (ts.empty()) throw io_error("config: missing 't'");
  if (ns.empty()) throw io_error("config: missing 'N'");
  if (!have_seed) throw io_error("config: missing 'seed' (runs must be reproducible)");

  for (int t : ts) {
    for (int n : ns) {
      for (RuleKind rule : rules) {
        SearchConfig c;
        c.s = s;
        c.n_items = t;
        c.n_tests = n;
        c.rule = rule;
        if (!weights_auto) c.weights = weights;
        if (!thresholds_auto && rule == RuleKind::wdr) c.thresholds = thresholds;
        c.repeats = repeats;
        c.master_seed = seed;
        c.method = method;
        c.mc_trials = trials;
        c.cap = cap;
        plan.scenarios.push_back(std::move(c));
      }
    }
  }
  return plan;
}

SimulationPlan load_simulation_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_simulation_config(ss.str());
  } catch (const io_error& e) {
    throw io_error(path.string() + ": " + e.what());
  }
}

std::string manifest_json(const SimulationPlan& plan, int n_rows) {
  nlohmann::ordered_json j;
  j["tool_version"] = kVersion;
  {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = buf;
  }
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : plan.config_echo) cfg[k] = v;
  j["config"] = cfg;
  if (!plan.scenarios.empty())
    j["master_seed"] = plan.scenarios.front().master_seed;
  j["rows"] = n_rows;
  return j.dump(2) + "\n";
}

}  // namespace gtht

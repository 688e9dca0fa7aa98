#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtht/core.hpp"
#include "gtht/ensemble.hpp"
#include "gtht/evaluator.hpp"
#include "gtht/exponent.hpp"
#include "gtht/harness.hpp"
#include "gtht/version.hpp"

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gtht::io_error("cannot open output file: " + path.string());
  out << body;
  if (!out) throw gtht::io_error("write failed: " + path.string());
}

// Shared record layout: N,t,s,rule,param,w,err_h0,err_h1,eps,method,trials,seed.
// param is T for WDR and s for COMP; blank fields where not applicable.
std::string eval_record(const gtht::TestMatrix& x, int s,
                        const std::string& rule, int param,
                        const gtht::ErrorPair& e, const std::string& method,
                        const std::string& trials, const std::string& seed) {
  std::string row = "N,t,s,rule,param,w,err_h0,err_h1,eps,method,trials,seed\n";
  row += std::to_string(x.n_tests());
  row += ',' + std::to_string(x.n_items());
  row += ',' + std::to_string(s);
  row += ',' + rule;
  row += ',' + std::to_string(param);
  row += ',';
  if (const auto w = x.uniform_column_weight()) row += std::to_string(*w);
  row += ',' + gtht::format_double(e.err_h0);
  row += ',' + gtht::format_double(e.err_h1);
  row += ',' + gtht::format_double(e.max_error());
  row += ',' + method;
  row += ',' + trials;
  row += ',' + seed;
  row += '\n';
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-testing hypothesis tests: COMP and weight-threshold "
               "decision rules, exact and Monte Carlo error evaluation, "
               "error-exponent tables and design search"};
  app.set_version_flag("--version", std::string(gtht::kVersion));
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a constant-column-weight design");
  int gen_n = 0, gen_t = 0, gen_w = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("-N,--tests", gen_n, "number of tests (rows)")->required();
  gen->add_option("-t,--items", gen_t, "number of items (columns)")->required();
  gen->add_option("-w,--weight", gen_w, "column weight")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("-o,--out", gen_out, "output matrix file")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate worst-case rule errors on a matrix");
  std::string eval_matrix, eval_rule, eval_method = "exact";
  int eval_s = 0, eval_T = -1, eval_trials = 1000;
  std::uint64_t eval_seed = 0, eval_cap = gtht::kDefaultEnumerationCap;
  bool eval_have_seed = false;
  eval->add_option("-m,--matrix", eval_matrix, "matrix file")->required();
  eval->add_option("-s", eval_s, "defective-count bound s")->required();
  eval->add_option("--rule", eval_rule, "comp or wdr")
      ->required()
      ->check(CLI::IsMember({"comp", "wdr"}));
  eval->add_option("-T,--threshold", eval_T, "WDR weight threshold");
  eval->add_option("--method", eval_method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  eval->add_option("--trials", eval_trials, "Monte Carlo trials per hypothesis");
  eval->add_option("--seed", eval_seed, "RNG seed (required for mc)")
      ->each([&](const std::string&) { eval_have_seed = true; });
  eval->add_option("--cap", eval_cap, "enumeration cap");

  // exponents
  auto* expo = app.add_subcommand("exponents", "Error-exponent table for a range of s");
  int s_min = 2, s_max = 6;
  std::string expo_out;
  expo->add_option("--s-min", s_min, "smallest s");
  expo->add_option("--s-max", s_max, "largest s");
  expo->add_option("-o,--out", expo_out, "output CSV (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a best-matrix search plan from a config file");
  std::string sim_config, sim_out, sim_manifest;
  int sim_threads = 1;
  sim->add_option("-c,--config", sim_config, "key=value config file")->required();
  sim->add_option("-o,--out", sim_out, "output CSV file")->required();
  sim->add_option("--manifest", sim_manifest, "manifest path (default <out>.manifest.json)");
  sim->add_option("--threads", sim_threads, "worker threads")
      ->check(CLI::PositiveNumber);

  // bound
  auto* bnd = app.add_subcommand("bound", "Converse lower bound on the universal error");
  int bnd_n = 0, bnd_t = 0, bnd_s = 0;
  bnd->add_option("-N,--tests", bnd_n, "number of tests")->required();
  bnd->add_option("-t,--items", bnd_t, "number of items")->required();
  bnd->add_option("-s", bnd_s, "defective-count bound s")->required();

  // check-disjunctive
  auto* chk = app.add_subcommand("check-disjunctive", "Exhaustively verify the disjunctive s-code property");
  std::string chk_matrix;
  int chk_s = 0;
  std::uint64_t chk_cap = gtht::kDefaultEnumerationCap;
  chk->add_option("-m,--matrix", chk_matrix, "matrix file")->required();
  chk->add_option("-s", chk_s, "code order s")->required();
  chk->add_option("--cap", chk_cap, "enumeration cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const gtht::EnsembleSpec spec(gen_n, gen_t, gen_w);
      gtht::save_matrix(gtht::sample_matrix(spec, gen_seed), gen_out);
      return 0;
    }

    if (*eval) {
      const gtht::TestMatrix x = gtht::load_matrix(eval_matrix);
      gtht::DecisionRule rule;
      int param;
      if (eval_rule == "wdr") {
        if (eval_T < 0)
          throw gtht::input_error("eval: --threshold is required for wdr");
        rule = gtht::WdrRule{eval_T};
        param = eval_T;
      } else {
        rule = gtht::CompRule{eval_s};
        param = eval_s;
      }
      if (eval_method == "exact") {
        gtht::ErrorPair e;
        if (eval_rule == "wdr")
          e = gtht::universal_error_wdr(x, eval_s, eval_T, eval_cap).errors;
        else
          e = gtht::exact_comp_error(x, eval_s, eval_cap);
        std::cout << eval_record(x, eval_s, eval_rule, param, e, "exact", "", "");
      } else {
        if (!eval_have_seed)
          throw gtht::input_error("eval: --seed is required for mc");
        const gtht::MCEstimate est =
            gtht::mc_error(x, rule, eval_s, eval_trials, eval_seed);
        std::cout << eval_record(x, eval_s, eval_rule, param, est.point, "mc",
                                 std::to_string(eval_trials),
                                 std::to_string(eval_seed));
        std::cout << "# half_width_h0=" << gtht::format_double(est.half_width_h0)
                  << " half_width_h1=" << gtht::format_double(est.half_width_h1)
                  << "\n";
      }
      return 0;
    }

    if (*expo) {
      if (s_min < 2 || s_max < s_min)
        throw gtht::input_error("exponents: require 2 <= s-min <= s-max");
      std::vector<int> s_list;
      for (int s = s_min; s <= s_max; ++s) s_list.push_back(s);
      const std::string csv = gtht::table1_to_csv(gtht::table1(s_list));
      if (expo_out.empty())
        std::cout << csv;
      else
        write_file(expo_out, csv);
      return 0;
    }

    if (*sim) {
      gtht::SimulationPlan plan = gtht::load_simulation_config(sim_config);
      for (auto& sc : plan.scenarios) sc.threads = sim_threads;
      // rows are appended and flushed as each scenario finishes, so a long
      // run interrupted midway still leaves its completed rows on disk
      std::ofstream out(sim_out, std::ios::binary);
      if (!out) throw gtht::io_error("cannot open output file: " + sim_out);
      out << gtht::kTable2CsvHeader << "\n" << std::flush;
      int n_rows = 0;
      for (const auto& sc : plan.scenarios) {
        const auto row = gtht::to_table2_row(sc, gtht::best_matrix_search(sc));
        out << gtht::table2_row_csv(row) << std::flush;
        ++n_rows;
      }
      if (!out) throw gtht::io_error("write failed: " + sim_out);
      const std::string manifest_path =
          sim_manifest.empty() ? sim_out + ".manifest.json" : sim_manifest;
      write_file(manifest_path, gtht::manifest_json(plan, n_rows));
      return 0;
    }

    if (*bnd) {
      std::cout << gtht::format_double(
                       gtht::lower_bound_error(bnd_n, bnd_t, bnd_s))
                << "\n";
      return 0;
    }

    if (*chk) {
      const gtht::TestMatrix x = gtht::load_matrix(chk_matrix);
      const gtht::DisjunctiveResult res =
          gtht::check_disjunctive(x, chk_s, chk_cap);
      if (res.is_code) {
        std::cout << "disjunctive: yes\n";
      } else {
        std::cout << "disjunctive: no\n";
        if (res.witness) {
          std::cout << "witness: subset {";
          for (std::size_t i = 0; i < res.witness->subset.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << res.witness->subset[i] + 1;  // 1-based for users
          }
          std::cout << "} covers item " << res.witness->covered_item + 1 << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

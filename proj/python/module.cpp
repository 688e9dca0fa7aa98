#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gtht/core.hpp"
#include "gtht/ensemble.hpp"
#include "gtht/evaluator.hpp"
#include "gtht/exponent.hpp"
#include "gtht/harness.hpp"
#include "gtht/version.hpp"

namespace py = pybind11;
using namespace gtht;

PYBIND11_MODULE(gtht, m) {
  m.doc() = "Group-testing hypothesis tests: decision rules, error "
            "evaluation, error exponents and design search";
  m.attr("__version__") = kVersion;

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<io_error>(m, "IoError", PyExc_IOError);
  py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);

  py::enum_<Hypothesis>(m, "Hypothesis")
      .value("H0", Hypothesis::h0)
      .value("H1", Hypothesis::h1);

  py::class_<CompRule>(m, "CompRule")
      .def(py::init<int>(), py::arg("s"))
      .def_readonly("s", &CompRule::max_defectives);
  py::class_<WdrRule>(m, "WdrRule")
      .def(py::init<int>(), py::arg("threshold"))
      .def_readonly("threshold", &WdrRule::threshold);

  py::class_<TestMatrix>(m, "TestMatrix")
      .def(py::init<int, int>(), py::arg("n_tests"), py::arg("n_items"))
      .def_static("identity", &TestMatrix::identity, py::arg("n"))
      .def_property_readonly("n_tests", &TestMatrix::n_tests)
      .def_property_readonly("n_items", &TestMatrix::n_items)
      .def("get", &TestMatrix::get, py::arg("test"), py::arg("item"))
      .def("set", &TestMatrix::set, py::arg("test"), py::arg("item"),
           py::arg("value") = true)
      .def("column_weight", &TestMatrix::column_weight, py::arg("item"))
      .def("to_text", [](const TestMatrix& x) { return to_text(x); })
      .def_static("parse", [](const std::string& s) { return parse_matrix_text(s); },
                  py::arg("text"))
      .def("__eq__", [](const TestMatrix& a, const TestMatrix& b) { return a == b; });

  py::class_<ResponseVector>(m, "ResponseVector")
      .def_property_readonly("weight", &ResponseVector::weight)
      .def("__len__", &ResponseVector::size)
      .def("bit", [](const ResponseVector& y, int i) { return y.bits().get(i); },
           py::arg("i"));

  m.def("response",
        [](const TestMatrix& x, const std::vector<int>& members) {
          return response(x, DefectiveSet(members));
        },
        py::arg("matrix"), py::arg("members"),
        "OR of the columns indexed by `members` (0-based)");
  m.def("covers",
        [](const ResponseVector& u, const ResponseVector& v) { return covers(u, v); },
        py::arg("u"), py::arg("v"));
  m.def("covered_columns",
        [](const TestMatrix& x, const ResponseVector& y) {
          return covered_columns(x, y);
        },
        py::arg("matrix"), py::arg("response"));
  m.def("decide",
        [](const DecisionRule& rule, const TestMatrix& x, const ResponseVector& y) {
          return decide(rule, x, y);
        },
        py::arg("rule"), py::arg("matrix"), py::arg("response"));
  m.def("is_disjunctive_code",
        [](const TestMatrix& x, int s, std::uint64_t cap) {
          return is_disjunctive_code(x, s, cap);
        },
        py::arg("matrix"), py::arg("s"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("check_disjunctive",
        [](const TestMatrix& x, int s, std::uint64_t cap) -> py::object {
          const auto r = check_disjunctive(x, s, cap);
          if (r.is_code) return py::make_tuple(true, py::none());
          return py::make_tuple(
              false, py::make_tuple(r.witness->subset, r.witness->covered_item));
        },
        py::arg("matrix"), py::arg("s"), py::arg("cap") = kDefaultEnumerationCap);

  m.def("weight_from_Q", &weight_from_Q, py::arg("n_tests"), py::arg("Q"));
  m.def("sample_matrix",
        [](int n_tests, int n_items, int column_weight, std::uint64_t seed) {
          return sample_matrix(EnsembleSpec(n_tests, n_items, column_weight), seed);
        },
        py::arg("n_tests"), py::arg("n_items"), py::arg("column_weight"),
        py::arg("seed"));
  m.def("union_weight_pmf",
        [](int n_tests, int k, int column_weight) {
          const auto pmf = union_weight_pmf(n_tests, k, column_weight);
          py::dict d;
          for (std::size_t w = 0; w < pmf.probs.size(); ++w)
            if (pmf.probs[w] != 0.0) d[py::int_(w)] = pmf.probs[w];
          return d;
        },
        py::arg("n_tests"), py::arg("k"), py::arg("column_weight"));

  py::class_<ErrorPair>(m, "ErrorPair")
      .def_readonly("err_h0", &ErrorPair::err_h0)
      .def_readonly("err_h1", &ErrorPair::err_h1)
      .def_property_readonly("eps", &ErrorPair::max_error)
      .def("__repr__", [](const ErrorPair& e) {
        return "ErrorPair(err_h0=" + format_double(e.err_h0) +
               ", err_h1=" + format_double(e.err_h1) + ")";
      });

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("point", &MCEstimate::point)
      .def_readonly("half_width_h0", &MCEstimate::half_width_h0)
      .def_readonly("half_width_h1", &MCEstimate::half_width_h1)
      .def_readonly("trials", &MCEstimate::trials);

  py::class_<ExactCounts>(m, "ExactCounts")
      .def_readonly("b1_s", &ExactCounts::b1_s)
      .def_readonly("b2_s1", &ExactCounts::b2_s1)
      .def_readonly("denom_s", &ExactCounts::denom_s)
      .def_readonly("denom_s1", &ExactCounts::denom_s1);
  m.def("exact_wdr_counts",
        [](const TestMatrix& x, int s, int threshold, std::uint64_t cap) {
          return exact_wdr_counts(x, s, threshold, cap);
        },
        py::arg("matrix"), py::arg("s"), py::arg("threshold"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("universal_error_wdr",
        [](const TestMatrix& x, int s, int threshold, std::uint64_t cap) {
          const auto u = universal_error_wdr(x, s, threshold, cap);
          return py::make_tuple(u.errors, u.eps);
        },
        py::arg("matrix"), py::arg("s"), py::arg("threshold"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("exact_comp_error",
        [](const TestMatrix& x, int s, std::uint64_t cap) {
          return exact_comp_error(x, s, cap);
        },
        py::arg("matrix"), py::arg("s"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("general_error",
        [](const TestMatrix& x, const DecisionRule& rule,
           const std::vector<double>& probs, int s, std::uint64_t cap) {
          return general_error(x, rule, SizeDistribution(probs), s, cap);
        },
        py::arg("matrix"), py::arg("rule"), py::arg("probs"), py::arg("s"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("mc_error",
        [](const TestMatrix& x, const DecisionRule& rule, int s, int trials,
           std::uint64_t seed) { return mc_error(x, rule, s, trials, seed); },
        py::arg("matrix"), py::arg("rule"), py::arg("s"), py::arg("trials"),
        py::arg("seed"));

  m.def("entropy", &entropy, py::arg("q"));
  m.def("positive_part", &positive_part, py::arg("x"));
  m.def("solve_y", &solve_y, py::arg("k"), py::arg("Q"), py::arg("q"));
  m.def("exponent_A", &exponent_A, py::arg("k"), py::arg("Q"), py::arg("q"));
  m.def("exponent_wdr_tau",
        [](int s, double tau) {
          const auto r = exponent_wdr_tau(s, tau);
          return py::make_tuple(r.q_star, r.value, r.boundary);
        },
        py::arg("s"), py::arg("tau"));

  py::class_<WdrExponentResult>(m, "WdrExponentResult")
      .def_readonly("s", &WdrExponentResult::s)
      .def_readonly("tau_star", &WdrExponentResult::tau_star)
      .def_readonly("q_star", &WdrExponentResult::q_star)
      .def_readonly("exponent", &WdrExponentResult::exponent);
  m.def("exponent_wdr", &exponent_wdr, py::arg("s"));

  py::class_<CompExponentResult>(m, "CompExponentResult")
      .def_readonly("s", &CompExponentResult::s)
      .def_readonly("rate", &CompExponentResult::rate)
      .def_readonly("exponent", &CompExponentResult::exponent)
      .def_readonly("Q_opt", &CompExponentResult::q_col_opt)
      .def_readonly("q_opt", &CompExponentResult::q_union_opt);
  m.def("exponent_comp", &exponent_comp, py::arg("s"), py::arg("rate"));
  m.def("capacity_comp", &capacity_comp, py::arg("s"));
  m.def("rate_wdr", &rate_wdr, py::arg("s"));
  m.def("lower_bound_error", &lower_bound_error, py::arg("n_tests"),
        py::arg("n_items"), py::arg("s"));

  py::enum_<RuleKind>(m, "RuleKind")
      .value("comp", RuleKind::comp)
      .value("wdr", RuleKind::wdr);
  py::enum_<EvalMethod>(m, "EvalMethod")
      .value("exact", EvalMethod::exact)
      .value("monte_carlo", EvalMethod::monte_carlo);

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("s", &SearchConfig::s)
      .def_readwrite("n_items", &SearchConfig::n_items)
      .def_readwrite("n_tests", &SearchConfig::n_tests)
      .def_readwrite("rule", &SearchConfig::rule)
      .def_readwrite("weights", &SearchConfig::weights)
      .def_readwrite("thresholds", &SearchConfig::thresholds)
      .def_readwrite("repeats", &SearchConfig::repeats)
      .def_readwrite("master_seed", &SearchConfig::master_seed)
      .def_readwrite("method", &SearchConfig::method)
      .def_readwrite("mc_trials", &SearchConfig::mc_trials)
      .def_readwrite("cap", &SearchConfig::cap)
      .def_readwrite("threads", &SearchConfig::threads);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("best_matrix", &SearchResult::best_matrix)
      .def_readonly("best_w", &SearchResult::best_w)
      .def_readonly("best_threshold", &SearchResult::best_threshold)
      .def_readonly("errors", &SearchResult::errors)
      .def_readonly("eps", &SearchResult::eps)
      .def_readonly("matrix_seed", &SearchResult::matrix_seed)
      .def_readonly("repetition", &SearchResult::repetition)
      .def_readonly("skipped", &SearchResult::skipped);
  m.def("best_matrix_search", &best_matrix_search, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<Table1Row>(m, "Table1Row")
      .def_readonly("s", &Table1Row::s)
      .def_readonly("E_wdr", &Table1Row::e_wdr)
      .def_readonly("tau_star", &Table1Row::tau_star)
      .def_readonly("Q_star", &Table1Row::q_star)
      .def_readonly("E_comp0", &Table1Row::e_comp0)
      .def_readonly("C_comp", &Table1Row::c_comp)
      .def_readonly("R_wdr", &Table1Row::r_wdr);
  m.def("table1", &table1, py::arg("s_list"),
        py::call_guard<py::gil_scoped_release>());
  m.def("table1_to_csv", &table1_to_csv, py::arg("rows"));
}

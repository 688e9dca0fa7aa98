"""Smoke tests for the python bindings."""
import math

import gtht


def test_version():
    assert gtht.__version__


def test_matrix_roundtrip_and_response():
    x = gtht.TestMatrix.identity(5)
    assert x.n_tests == 5 and x.n_items == 5
    y = gtht.response(x, [0, 2])
    assert y.weight == 2
    assert gtht.covered_columns(x, y) == [0, 2]
    again = gtht.TestMatrix.parse(x.to_text())
    assert again == x


def test_decide_rules():
    x = gtht.TestMatrix.identity(4)
    y = gtht.response(x, [1, 2])
    assert gtht.decide(gtht.WdrRule(2), x, y) == gtht.Hypothesis.H0
    assert gtht.decide(gtht.WdrRule(1), x, y) == gtht.Hypothesis.H1
    assert gtht.decide(gtht.CompRule(2), x, y) == gtht.Hypothesis.H0
    assert gtht.is_disjunctive_code(x, 2)


def test_sampling_is_deterministic():
    a = gtht.sample_matrix(8, 10, 2, seed=42)
    b = gtht.sample_matrix(8, 10, 2, seed=42)
    assert a.to_text() == b.to_text()
    assert all(a.column_weight(j) == 2 for j in range(10))
    assert gtht.weight_from_Q(10, 0.25) == 2


def test_union_weight_pmf():
    pmf = gtht.union_weight_pmf(2, 2, 1)
    assert pmf == {1: 0.5, 2: 0.5}


def test_error_evaluation():
    x = gtht.TestMatrix.identity(5)
    errors, eps = gtht.universal_error_wdr(x, 2, 2)
    assert (errors.err_h0, errors.err_h1, eps) == (0.0, 0.0, 0.0)
    counts = gtht.exact_wdr_counts(x, 2, 2)
    assert (counts.b1_s, counts.b2_s1) == (0, 0)
    assert (counts.denom_s, counts.denom_s1) == (10, 10)
    comp = gtht.exact_comp_error(x, 2)
    assert (comp.err_h0, comp.err_h1) == (0.0, 0.0)
    est = gtht.mc_error(x, gtht.WdrRule(2), 2, trials=200, seed=7)
    assert est.point.eps == 0.0


def test_exponents_match_reference():
    r = gtht.exponent_wdr(2)
    assert abs(r.exponent - 0.1380) <= 5e-4
    assert abs(r.tau_star - 0.2065) <= 5e-3
    assert abs(r.q_star - 0.1033) <= 5e-3
    c = gtht.exponent_comp(2, 0.0)
    assert abs(c.exponent - 0.3651) <= 5e-4
    assert abs(gtht.exponent_A(2, 0.2, 0.3) - 0.08707654032768519) < 1e-10
    assert abs(gtht.lower_bound_error(10, 1000, 2) - 0.014654308617234468) < 1e-12
    assert gtht.entropy(0.5) == 1.0


def test_search():
    cfg = gtht.SearchConfig()
    cfg.s = 2
    cfg.n_items = 12
    cfg.n_tests = 8
    cfg.rule = gtht.RuleKind.wdr
    cfg.repeats = 30
    cfg.master_seed = 99
    res = gtht.best_matrix_search(cfg)
    assert 0.0 <= res.eps <= 1.0
    assert 1 <= res.best_w <= 7
    again = gtht.best_matrix_search(cfg)
    assert again.eps == res.eps and again.best_w == res.best_w


def test_input_errors_surface_as_value_errors():
    try:
        gtht.entropy(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")

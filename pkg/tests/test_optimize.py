import random

import pytest
from hypothesis import given, strategies as st

from conftest import cheaper_solvers
from ctree import gen
from ctree.logic import And, App, Exists, Forall, Not, Or, Pred, Signature, Var
from ctree.optimize import (ComplexityMeasure, UnknownSymbol, count_trees, enumerate_trees,
                            is_strictly_limited, k_psi, max_symbol_weight, optimize, psi_problem,
                            psi_scheme, psi_word, sat_via_optimizer)
from ctree.satisfiability import sat_check
from ctree.schemes import FuncExpr, PredVars, ProblemScheme, TreeScheme, depth, scheme_from_literals
from ctree.semantics import Bounded, ExplosionError
from ctree.solvability import solves_relative

x0 = Var(0)
r = lambda t: Pred("r", (t,))  # noqa: E731
f = lambda t: App("f", (t,))  # noqa: E731


@pytest.fixture(scope="module")
def w12(sig_rf):
    return ComplexityMeasure.for_signature(sig_rf, {"r": 1, "f": 2})


def two_test_tree():
    return TreeScheme.build(1, (PredVars("r", (0,)),
                                (FuncExpr(0, "f", (0,)), (PredVars("r", (0,)), 3, 2)),
                                1))


def test_psi_word(sig_rf, w12):
    assert psi_word(w12, ()) == 0
    assert psi_word(w12, ("f", "r")) == 3
    assert psi_word(ComplexityMeasure.depth(sig_rf), ("f", "r", "f", "f")) == 4
    with pytest.raises(UnknownSymbol):
        psi_word(w12, ("g",))
    with pytest.raises(UnknownSymbol):
        ComplexityMeasure.for_signature(sig_rf, {"g": 1})
    with pytest.raises(ValueError):
        ComplexityMeasure.for_signature(sig_rf, {"f": 0})


def test_psi_of_schemes(sig_rf, w12):
    depth_m = ComplexityMeasure.depth(sig_rf)
    assert psi_scheme(depth_m, TreeScheme.build(1, 4)) == 0
    assert psi_scheme(depth_m, two_test_tree()) == 3
    s = ProblemScheme(1, (0, 1), [FuncExpr(1, "f", (0,)), PredVars("r", (1,))])
    assert psi_problem(w12, s) == 3


def test_k_psi():
    sig = Signature.of({"r": 1}, {"f": 1}, equality=True)
    m = ComplexityMeasure.for_signature(sig, {"r": 1, "f": 2, "=": 1})
    assert (k_psi(m, 0), k_psi(m, 1), k_psi(m, 2)) == (0, 2, 1)
    three = ComplexityMeasure.depth(Signature.of({"r": 1, "p": 2}, {"f": 1}))
    assert k_psi(three, 1) == 3


def test_enumerator_small_cases(sig_r):
    m = ComplexityMeasure.depth(sig_r)
    assert [t.nested() for t in enumerate_trees(sig_r, m, 0, 1, {0})] == [0]
    trees = list(enumerate_trees(sig_r, m, 1, 1, {0, 1}))
    assert len(trees) == 6 == count_trees(sig_r, m, 1, 1, 2, 2)
    assert [t.nested() for t in trees[:2]] == [0, 1]


def test_enumerator_order_and_guard(sig_rf, w12):
    trees = list(enumerate_trees(sig_rf, w12, 3, 1, {0, 1}))
    keys = [(psi_scheme(w12, t), depth(t)) for t in trees]
    assert keys == sorted(keys)
    assert len(trees) == count_trees(sig_rf, w12, 3, 1, 2, 8)
    with pytest.raises(ExplosionError):
        list(enumerate_trees(sig_rf, w12, 3, 1, {0, 1}, guard=10))


def test_enumerated_trees_obey_complexity_lower_bounds(sig_rf, w12):
    for m in (w12, ComplexityMeasure.depth(sig_rf)):
        for t in enumerate_trees(sig_rf, m, 3, 1, {0, 1}):
            assert psi_scheme(m, t) >= depth(t)
            assert psi_scheme(m, t) >= max_symbol_weight(m, t)


def test_strictly_limited():
    m = ComplexityMeasure.for_signature(Signature.of({"r": 1}, {"f": 1}, equality=True),
                                        {"r": 3, "f": 1, "=": 2})
    assert is_strictly_limited(lambda w: psi_word(m, w), ["r", "f", "="])
    assert not is_strictly_limited(lambda w: 0, ["r"])
    rng = random.Random(11)
    alphabet = ["r", "f", "="]
    for _ in range(500):
        a1, a3 = ([rng.choice(alphabet) for _ in range(rng.randint(0, 4))] for _ in range(2))
        a2 = [rng.choice(alphabet) for _ in range(rng.randint(1, 4))]
        assert psi_word(m, a1 + a2 + a3) > psi_word(m, a1 + a3)


def test_optimize_constant(sig_r):
    res = optimize(ProblemScheme(1, (4, 4), [PredVars("r", (0,))]), sig_r, Bounded(2))
    assert res.tree.nested() == 4 and res.psi == 0


def test_optimize_single_test(sig_r):
    s = ProblemScheme(1, (0, 1), [PredVars("r", (0,))])
    res = optimize(s, sig_r, Bounded(2))
    assert res.tree.nested() == (PredVars("r", (0,)), 0, 1) and res.psi == 1
    assert set(res.certificate) == {0, 1}


def test_optimize_compiled_term(sig_rf, w12):
    _, s = scheme_from_literals(1, [(r(f(x0)), True)])
    res = optimize(s, sig_rf, Bounded(2), m=w12)
    assert res.psi == 3 == res.bound
    assert cheaper_solvers(s, sig_rf, w12, Bounded(2), 3) == []


def test_optimize_empty_class(sig_r):
    s = ProblemScheme(1, (3, 1), [PredVars("r", (0,))])
    res = optimize(s, sig_r, Bounded(2), alpha=And((Exists(0, r(x0)), Forall(0, Not(r(x0))))))
    assert res.tree.nested() == 1 and "empty" in res.note


def test_alpha_can_make_problems_cheaper(sig_rf):
    # under "f is the identity on r" the test r(f(x0)) collapses to r(x0)
    _, s = scheme_from_literals(1, [(r(f(x0)), True)])
    alpha = Forall(0, Or((And((r(x0), r(f(x0)))), And((Not(r(x0)), Not(r(f(x0))))))))
    res = optimize(s, sig_rf, Bounded(2), alpha)
    assert res.psi == 1


def test_optimize_methods_agree(sig_rf):
    _, s = scheme_from_literals(1, [(r(x0), False), (r(f(x0)), True)])
    a = optimize(s, sig_rf, Bounded(2), method="brute")
    b = optimize(s, sig_rf, Bounded(2), method="reduction")
    assert a.psi == b.psi


@given(st.integers(0, 100_000))
def test_optimizer_is_sound_and_minimal(sig_rf, seed):
    rng = random.Random(seed)
    s = gen.problem_scheme(rng, sig_rf, 1, max_exprs=3, max_predicates=2)
    m = ComplexityMeasure.depth(sig_rf)
    if psi_problem(m, s) > 3:
        return
    res = optimize(s, sig_rf, Bounded(2), m=m)
    assert res.psi <= psi_problem(m, s)
    assert solves_relative(res.tree, s, sig_rf, Bounded(2)).solves
    assert cheaper_solvers(s, sig_rf, m, Bounded(2), res.psi) == []


def test_sat_via_optimizer_examples(sig_r):
    taut = Forall(0, Or((r(x0), Not(r(x0)))))
    assert sat_via_optimizer(taut, Exists(0, r(x0)), sig_r, Bounded(1)).sat
    assert not sat_via_optimizer(None, Exists(0, And((r(x0), Not(r(x0))))), sig_r, Bounded(2)).sat
    assert not sat_via_optimizer(Forall(0, Not(r(x0))), Exists(0, r(x0)), sig_r, Bounded(2)).sat


@given(st.integers(0, 100_000))
def test_sat_via_optimizer_matches_sat_check(seed):
    rng = random.Random(seed)
    sig = Signature.of({"r": 1}, {"f": 1})
    gamma = gen.existential(rng, sig, 1, 3)
    alpha = gen.sentence(rng, sig, size=2, quantifiers=1, nvars=1)
    expected = sat_check(And((alpha, gamma)), sig, Bounded(2)).sat
    assert sat_via_optimizer(alpha, gamma, sig, Bounded(2)).sat == expected

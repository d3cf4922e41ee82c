import random

import pytest
from hypothesis import given, strategies as st

from ctree import gen
from ctree.logic import And, App, Exists, Forall, Not, Or, Pred, Signature, Var
from ctree.satisfiability import PrefixViolation, sat_check, sat_conjunction
from ctree.schemes import PredVars, ProblemScheme, TreeScheme, problem_tree
from ctree.semantics import Bounded, Explicit, model_check
from ctree.solvability import (FailsWith, ReductionWitness, Solves, StructureWitness,
                               sat_via_solvability, solves_relative, zero_problem)

r = lambda t: Pred("r", (t,))  # noqa: E731
x0 = Var(0)
IDENTITY = ProblemScheme(1, (0, 1), [PredVars("r", (0,))])


@pytest.mark.parametrize("method", ["brute", "reduction"])
def test_chain_tree_solves_its_problem(sig_rf, method):
    rng = random.Random(3)
    for _ in range(10):
        s = gen.problem_scheme(rng, sig_rf, 1, max_exprs=3)
        assert solves_relative(problem_tree(s), s, sig_rf, Bounded(2), method=method).solves


def test_constant_tree_fails_identity(sig_r):
    brute = solves_relative(TreeScheme.build(1, 0), IDENTITY, sig_r, Bounded(2))
    assert isinstance(brute, FailsWith) and isinstance(brute.witness, StructureWitness)
    assert brute.witness.inputs == (0,) and brute.witness.expected == 1
    red = solves_relative(TreeScheme.build(1, 0), IDENTITY, sig_r, Bounded(2), method="reduction")
    w = red.witness
    assert isinstance(w, ReductionWitness) and w.delta == (1,)
    assert w.path.label == 0 and model_check(w.structure, w.sentence)


def test_alpha_restricts_the_class(sig_r):
    # when r holds everywhere, the constant tree 1 computes r(x0)
    alpha = Forall(0, r(x0))
    for method in ("brute", "reduction"):
        assert solves_relative(TreeScheme.build(1, 1), IDENTITY, sig_r, Bounded(2), alpha,
                               method).solves


def test_arity_mismatch(sig_r):
    v = solves_relative(TreeScheme.build(2, 0), IDENTITY, sig_r, Bounded(2))
    assert not v.solves and "arity" in v.reason


def test_empty_class_solves(sig_r):
    v = solves_relative(TreeScheme.build(1, 0), IDENTITY, sig_r, Explicit(()))
    assert v == Solves(0)


def test_zero_problem(sig_r, sig_rf):
    assert zero_problem(sig_r).nu == (0, 0)
    assert zero_problem(Signature.of({}, {"f": 1}, equality=True)).exprs[0].left == 0


def test_sat_via_solvability_examples(sig_r, sig_rf):
    taut = Forall(0, Or((r(x0), Not(r(x0)))))
    assert sat_via_solvability(None, Exists(0, r(x0)), sig_r, Bounded(1)).sat
    assert not sat_via_solvability(None, Exists(0, And((r(x0), Not(r(x0))))), sig_r,
                                   Bounded(2)).sat
    beta = Exists(0, r(App("f", (x0,))))
    alpha = Forall(0, Not(r(x0)))
    assert not sat_via_solvability(alpha, beta, sig_rf, Bounded(2)).sat
    assert sat_via_solvability(taut, beta, sig_rf, Bounded(2)).sat


def test_sat_via_solvability_requires_existential(sig_r):
    with pytest.raises(PrefixViolation):
        sat_via_solvability(None, Forall(0, r(x0)), sig_r, Bounded(1))


@given(st.integers(0, 100_000))
def test_methods_agree(seed):
    rng = random.Random(seed)
    sig = Signature.of({"r": 1}, {"f": 1})
    S = gen.tree_scheme(rng, sig, 1, depth=2, labels=(0, 1))
    s = gen.problem_scheme(rng, sig, 1, max_exprs=3)
    b = solves_relative(S, s, sig, Bounded(2), method="brute")
    red = solves_relative(S, s, sig, Bounded(2), method="reduction")
    assert b.solves == red.solves


@given(st.integers(0, 100_000))
def test_forward_reduction_matches_direct_check(seed):
    rng = random.Random(seed)
    sig = Signature.of({"r": 1}, {"f": 1}, equality=True)
    beta = gen.existential(rng, sig, 2, 3)
    alpha = gen.sentence(rng, sig, size=2, quantifiers=1, nvars=1)
    direct = sat_conjunction([alpha, beta], sig, Bounded(2))
    assert sat_via_solvability(alpha, beta, sig, Bounded(2)).sat == direct.sat
    assert sat_via_solvability(None, beta, sig, Bounded(2)).sat == sat_check(beta, sig,
                                                                              Bounded(2)).sat

import random

import pytest
from hypothesis import given, strategies as st

from conftest import equivalent_everywhere
from ctree import gen
from ctree.logic import (EXISTS, FORALL, And, App, Eq, Exists, Forall, Imp, Lit, LogicError,
                         Not, Or, Pred, Signature, SignatureError, Symbol, Var, check_formula,
                         dnf_formula, free_vars, is_quantifier_free, prefix_of, to_dnf, to_prenex)

x0, x1, x2 = Var(0), Var(1), Var(2)


def r(t):
    return Pred("r", (t,))


def f(t):
    return App("f", (t,))


class TestSignature:
    def test_rejects_nullary_predicate(self):
        with pytest.raises(SignatureError):
            Signature((Symbol("p", "pred", 0),))

    def test_constants_need_flag(self):
        with pytest.raises(SignatureError):
            Signature((Symbol("c", "fn", 0),))
        sig = Signature((Symbol("c", "fn", 0),), allow_constants=True)
        assert sig.functions[0].arity == 0

    def test_duplicate_and_reserved_names(self):
        with pytest.raises(SignatureError):
            Signature.of({"r": 1}, {"r": 1})
        with pytest.raises(SignatureError):
            Signature.of({"x3": 1})

    def test_equality_gate(self):
        sig = Signature.of({"r": 1})
        with pytest.raises(LogicError):
            check_formula(sig, Eq(x0, x0))
        check_formula(sig.with_equality(True), Eq(x0, x0))

    def test_arity_checked(self):
        sig = Signature.of({"r": 1}, {"f": 1})
        with pytest.raises(LogicError):
            check_formula(sig, Pred("r", (x0, x1)))
        with pytest.raises(LogicError):
            check_formula(sig, Pred("f", (x0,)))


class TestPrenex:
    def test_already_prenex(self):
        ps = to_prenex(Forall(0, r(x0)))
        assert ps.prefix == ((FORALL, 0),) and ps.matrix == r(x0)

    def test_duality(self):
        ps = to_prenex(Not(Exists(0, r(x0))))
        assert ps.prefix == ((FORALL, 0),) and ps.matrix == Not(r(x0))

    def test_rename_apart(self, sig_r):
        s = And((Exists(0, r(x0)), Forall(0, r(x0))))
        ps = to_prenex(s)
        assert ps.prefix == ((EXISTS, 0), (FORALL, 1))
        assert ps.matrix == And((r(x0), r(x1)))
        assert equivalent_everywhere(sig_r, s, ps.formula())

    def test_implication_flips_left_quantifier(self, sig_r):
        s = Imp(Forall(0, r(x0)), Exists(1, Not(r(x1))))
        ps = to_prenex(s)
        assert ps.word == "EE"
        assert equivalent_everywhere(sig_r, s, ps.formula())

    def test_prefix_of(self):
        assert prefix_of(Forall(0, Exists(1, r(x1)))).word == "AE"
        assert prefix_of(And((Forall(0, r(x0)), r(x1)))) is None

    def test_random_sentences_size3(self, sig_rf):
        rng = random.Random(11)
        for _ in range(200):
            s = gen.sentence(rng, sig_rf, size=3, quantifiers=2)
            ps = to_prenex(s)
            assert not free_vars(ps.formula())
            assert is_quantifier_free(ps.matrix)
            assert equivalent_everywhere(sig_rf, s, ps.formula(), max_size=3)


class TestDNF:
    def test_single_literal(self):
        assert to_dnf(r(x0)) == [[Lit(r(x0), True)]]

    def test_contradiction_pruned(self):
        assert to_dnf(And((r(x0), Not(r(x0))))) == []
        assert dnf_formula([]) is None

    def test_implication(self):
        assert to_dnf(Imp(r(x0), r(x1))) == [[Lit(r(x0), False)], [Lit(r(x1), True)]]

    def test_duplicates_removed(self):
        out = to_dnf(Or((And((r(x0), r(x0))), r(x0))))
        assert out == [[Lit(r(x0), True)]]

    def test_rejects_quantifiers(self):
        with pytest.raises(LogicError):
            to_dnf(Forall(0, r(x0)))

    @given(st.integers(0, 10_000))
    def test_equivalent_on_all_assignments(self, seed):
        sig = Signature.of({"r": 1, "p": 2}, {"f": 1}, equality=True)
        rng = random.Random(seed)
        m = gen.quantifier_free(rng, sig, 2, size=rng.randint(1, 4))
        d = dnf_formula(to_dnf(m))
        if d is None:
            d = And((Eq(x0, x0), Not(Eq(x0, x0))))
        assert equivalent_everywhere(sig, m, d, max_size=2, nvars=2)

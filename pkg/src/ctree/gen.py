"""Seeded random objects for property tests and demos.

Every generator takes a :class:`random.Random` so runs are reproducible.
"""
from __future__ import annotations

import random

from .logic import (EXISTS, FORALL, And, App, Eq, Exists, Forall, Imp, Lit, Not, Or, Pred,
                    Signature, Var, free_vars)
from .prefix import PrefixLanguage
from .schemes import EqVars, FuncExpr, PredVars, ProblemScheme, TreeScheme
from .semantics import FiniteStructure


def term(rng: random.Random, sig: Signature, nvars: int, depth: int = 2):
    fns = sig.functions
    if depth <= 0 or not fns or rng.random() < 0.4:
        consts = [f for f in fns if f.arity == 0]
        if consts and rng.random() < 0.2:
            return App(rng.choice(consts).name, ())
        return Var(rng.randrange(nvars))
    f = rng.choice(fns)
    return App(f.name, tuple(term(rng, sig, nvars, depth - 1) for _ in range(f.arity)))


def atom(rng: random.Random, sig: Signature, nvars: int, depth: int = 2):
    preds = sig.predicates
    if sig.equality and (not preds or rng.random() < 0.3):
        return Eq(term(rng, sig, nvars, depth), term(rng, sig, nvars, depth))
    p = rng.choice(preds)
    return Pred(p.name, tuple(term(rng, sig, nvars, depth) for _ in range(p.arity)))


def literal(rng, sig, nvars, depth=2) -> Lit:
    return Lit(atom(rng, sig, nvars, depth), rng.random() < 0.5)


def quantifier_free(rng: random.Random, sig: Signature, nvars: int, size: int = 4,
                    term_depth: int = 1):
    """Random Boolean combination with about ``size`` atoms."""
    if size <= 1:
        a = atom(rng, sig, nvars, term_depth)
        return Not(a) if rng.random() < 0.3 else a
    left = rng.randint(1, size - 1)
    a = quantifier_free(rng, sig, nvars, left, term_depth)
    b = quantifier_free(rng, sig, nvars, size - left, term_depth)
    kind = rng.randrange(4)
    return And((a, b)) if kind == 0 else Or((a, b)) if kind == 1 else Imp(a, b) if kind == 2 \
        else Not(And((a, b)))


def formula(rng: random.Random, sig: Signature, nvars: int = 3, size: int = 4,
            quantifiers: int = 2, term_depth: int = 1):
    """Random formula over ``x0 .. x_{nvars-1}``; quantifiers may appear
    anywhere, including under negations and on the left of implications."""
    if quantifiers > 0 and rng.random() < 0.4:
        q = Forall if rng.random() < 0.5 else Exists
        return q(rng.randrange(nvars), formula(rng, sig, nvars, size, quantifiers - 1, term_depth))
    if size <= 1:
        a = atom(rng, sig, nvars, term_depth)
        return Not(a) if rng.random() < 0.3 else a
    left = rng.randint(1, size - 1)
    split = rng.randint(0, quantifiers)
    a = formula(rng, sig, nvars, left, split, term_depth)
    b = formula(rng, sig, nvars, size - left, quantifiers - split, term_depth)
    kind = rng.randrange(4)
    return And((a, b)) if kind == 0 else Or((a, b)) if kind == 1 else Imp(a, b) if kind == 2 \
        else Not(Or((a, b)))


def sentence(rng: random.Random, sig: Signature, size: int = 4, quantifiers: int = 2,
             nvars: int = 3, term_depth: int = 1):
    """Random formula closed by quantifying its free variables in random order."""
    body = formula(rng, sig, nvars, size, quantifiers, term_depth)
    free = sorted(free_vars(body))
    rng.shuffle(free)
    for v in free:
        body = (Forall if rng.random() < 0.5 else Exists)(v, body)
    return body


def existential(rng: random.Random, sig: Signature, max_quantifiers: int = 2,
                max_literals: int = 4, term_depth: int = 1):
    """``exists x0..x_{q-1} M`` with ``M`` a quantifier-free combination."""
    q = rng.randint(1, max_quantifiers)
    body = quantifier_free(rng, sig, q, rng.randint(1, max_literals), term_depth)
    for v in reversed(range(q)):
        body = Exists(v, body)
    return body


def prenex_word(rng: random.Random, max_len: int = 4) -> str:
    return "".join(rng.choice((FORALL, EXISTS)) for _ in range(rng.randint(0, max_len)))


# -- schemes ------------------------------------------------------------------

def func_expr(rng, sig, var_range: int):
    f = rng.choice(sig.functions)
    return FuncExpr(rng.randrange(var_range), f.name,
                    tuple(rng.randrange(var_range) for _ in range(f.arity)))


def pred_expr(rng, sig, var_range: int):
    preds = sig.predicates
    if sig.equality and (not preds or rng.random() < 0.3):
        return EqVars(rng.randrange(var_range), rng.randrange(var_range))
    p = rng.choice(preds)
    return PredVars(p.name, tuple(rng.randrange(var_range) for _ in range(p.arity)))


def tree_scheme(rng: random.Random, sig: Signature, n: int, depth: int = 3,
                labels=(0, 1, 2), var_range: int | None = None) -> TreeScheme:
    """Random scheme of depth at most ``depth``.

    Variables are drawn from ``x0 .. x_{var_range-1}`` (default ``n + 3``), so
    inputs get overwritten and unassigned registers get read.
    """
    var_range = var_range or n + 3
    has_tests = bool(sig.predicates) or sig.equality

    def go(d):
        r = rng.random()
        if d == 0 or r < 0.25 or (not has_tests and not sig.functions):
            return rng.choice(labels)
        if sig.functions and (r < 0.5 or not has_tests):
            return (func_expr(rng, sig, var_range), go(d - 1))
        return (pred_expr(rng, sig, var_range), go(d - 1), go(d - 1))

    return TreeScheme.build(n, go(depth))


def problem_scheme(rng: random.Random, sig: Signature, n: int, max_exprs: int = 4,
                   max_predicates: int = 2, labels=(0, 1), var_range: int | None = None
                   ) -> ProblemScheme:
    var_range = var_range or n + 2
    k = rng.randint(1, max_predicates)
    m = rng.randint(k, max(k, max_exprs))
    kinds = [True] * k + [False] * (m - k) if sig.functions else [True] * k
    rng.shuffle(kinds)
    exprs = tuple(pred_expr(rng, sig, var_range) if is_pred else func_expr(rng, sig, var_range)
                  for is_pred in kinds)
    nu = tuple(rng.choice(labels) for _ in range(2 ** k))
    return ProblemScheme(n, nu, exprs)


def structure(rng: random.Random, sig: Signature, size: int) -> FiniteStructure:
    tables = []
    for s in sig.symbols:
        hi = 2 if s.is_pred else size
        tables.append(tuple(rng.randrange(hi) for _ in range(size ** s.arity)))
    return FiniteStructure(sig, size, tuple(tables))


# -- prefix languages ---------------------------------------------------------

def pattern(rng: random.Random, max_tokens: int = 3) -> str:
    out = []
    for _ in range(rng.randint(1, max_tokens)):
        letter = rng.choice("AE")
        suffix = rng.choice(["", "", "*", "2", "3"])
        out.append(letter + suffix)
    return "".join(out)


def prefix_language(rng: random.Random, max_generators: int = 2, raw_words: bool = False
                    ) -> PrefixLanguage:
    pats = tuple(pattern(rng) for _ in range(rng.randint(1, max_generators)))
    words = ()
    if raw_words and rng.random() < 0.5:
        words = tuple(prenex_word(rng, 3) for _ in range(rng.randint(1, 2)))
    return PrefixLanguage(pats, words)

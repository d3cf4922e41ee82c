"""Weighted-depth complexity, exhaustive tree enumeration and the optimizer.

A weighted depth assigns every symbol (and ``"="`` for equality tests) a
positive weight; the complexity of an expression word is the sum of its
weights and a tree costs as much as its most expensive complete path.

Trees are generated in single-assignment form: every function node writes a
fresh variable ``x_k`` where ``k`` counts the inputs plus the function nodes
above it.  Any scheme can be rewritten this way without changing what it
computes or what it costs, so nothing is lost for optimization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, Optional

from .logic import Formula, Signature
from .satisfiability import Sat, SatVerdict, UnsatUpTo
from .schemes import (EqVars, FuncExpr, PredVars, ProblemScheme, TerminalNode, TreeScheme,
                      check_problem, children, depth, scheme_from_literals)
from .semantics import (ClassSpec, DEFAULT_GUARD, ExplosionError, enumerate_structures,
                        evaluate_problem, restrict, spec_bound)
from .solvability import _existential_block, solves_relative

EQUALITY = "="
DEFAULT_SCRATCH_CLAMP = 8
TREE_GUARD = 500_000


class UnknownSymbol(KeyError):
    pass


class OptimizerError(RuntimeError):
    """The search ended without a solver although one must exist."""


@dataclass(frozen=True)
class ComplexityMeasure:
    """Positive integer weight for every symbol of a signature."""
    weights: tuple  # ((symbol, weight), ...)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(kv) for kv in self.weights))
        for name, w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"weight of {name!r} must be a positive integer, got {w!r}")

    @classmethod
    def for_signature(cls, sig: Signature, weights: Mapping[str, int] | None = None,
                      default: int = 1) -> "ComplexityMeasure":
        weights = dict(weights or {})
        names = [s.name for s in sig.symbols] + ([EQUALITY] if sig.equality else [])
        extra = set(weights) - set(names)
        if extra:
            raise UnknownSymbol(f"weights for unknown symbols: {sorted(extra)}")
        return cls(tuple((name, weights.get(name, default)) for name in names))

    @classmethod
    def depth(cls, sig: Signature) -> "ComplexityMeasure":
        return cls.for_signature(sig)

    def weight(self, symbol: str) -> int:
        for name, w in self.weights:
            if name == symbol:
                return w
        raise UnknownSymbol(f"no weight for symbol {symbol!r}")

    def as_dict(self) -> dict:
        return dict(self.weights)


def word_of(exprs) -> tuple[str, ...]:
    return tuple(EQUALITY if isinstance(e, EqVars) else e.symbol for e in exprs)


def psi_word(m: ComplexityMeasure, word) -> int:
    return sum(m.weight(q) for q in word)


def psi_scheme(m: ComplexityMeasure, S: TreeScheme) -> int:
    def go(i):
        node = S.nodes[i]
        if isinstance(node, TerminalNode):
            return 0
        return psi_word(m, word_of([node.expr])) + max(go(c) for c in children(node))
    return go(S.root)


def psi_problem(m: ComplexityMeasure, s: ProblemScheme) -> int:
    return psi_word(m, word_of(s.exprs))


def k_psi(m: ComplexityMeasure, i: int) -> int:
    """How many symbols carry weight ``i``."""
    return sum(1 for _, w in m.weights if w == i)


def max_symbol_weight(m: ComplexityMeasure, S: TreeScheme) -> int:
    return max((psi_word(m, word_of([e])) for e in S.expressions()), default=0)


def is_strictly_limited(psi, alphabet, max_len: int = 3) -> bool:
    """Check ``psi(a1 a2 a3) > psi(a1 a3)`` for all nonempty ``a2`` up to ``max_len``."""
    words = [w for n in range(max_len + 1) for w in product(alphabet, repeat=n)]
    for a1 in words:
        for a3 in words:
            base = psi(a1 + a3)
            for a2 in words:
                if a2 and psi(a1 + a2 + a3) <= base:
                    return False
    return True


# -- exhaustive enumeration ---------------------------------------------------

def _choices(sig: Signature, m: ComplexityMeasure, r: int):
    preds = [(s.name, s.arity) for s in sig.predicates if m.weight(s.name) <= r]
    fns = [(s.name, s.arity) for s in sig.functions if m.weight(s.name) <= r]
    eq = sig.equality and m.weight(EQUALITY) <= r
    return preds, fns, eq


def _pred_exprs(preds, eq, k):
    for name, arity in preds:
        for args in product(range(k), repeat=arity):
            yield PredVars(name, args)
    if eq:
        for i in range(k):
            for j in range(i + 1, k):
                yield EqVars(i, j)


def count_trees(sig: Signature, m: ComplexityMeasure, r: int, n: int, n_labels: int,
                scratch_cap: int) -> int:
    preds, fns, eq = _choices(sig, m, r)
    memo = {}

    def count(h, k):
        if (h, k) in memo:
            return memo[h, k]
        total = n_labels
        if h > 0:
            np_ = sum(k ** a for _, a in preds) + (k * (k - 1) // 2 if eq else 0)
            total += np_ * count(h - 1, k) ** 2
            if k - n < scratch_cap:
                total += sum(k ** a for _, a in fns) * count(h - 1, k + 1)
        memo[h, k] = total
        return total

    return count(r, n)


def _scratch_cap(r: int, var_cap: int | None) -> int:
    cap = 2 ** min(r, 30)
    return min(cap, var_cap) if var_cap is not None else cap


def enumerate_trees(sig: Signature, m: ComplexityMeasure, r: int, n: int, labels,
                    var_cap: int | None = None, guard: int = TREE_GUARD) -> Iterator[TreeScheme]:
    """All single-assignment schemes with terminal labels from ``labels``,
    depth at most ``r``, symbol weights at most ``r`` and variables inside
    ``x0 .. x_{n+cap-1}`` (``cap = min(2^r, var_cap)``).

    Equality tests compare two distinct variables, smaller index first.
    Output order: complexity, then depth, then the serialized tree.
    """
    from .io import format_tree

    labels = sorted(set(labels))
    if not labels:
        raise ValueError("label set must be nonempty")
    cap = _scratch_cap(r, var_cap)
    total = count_trees(sig, m, r, n, len(labels), cap)
    if total > guard:
        raise ExplosionError("tree enumeration", total, guard)
    preds, fns, eq = _choices(sig, m, r)

    def gen(h, k):
        yield from labels
        if h == 0:
            return
        for e in _pred_exprs(preds, eq, k):
            subs = list(gen(h - 1, k))
            for c0 in subs:
                for c1 in subs:
                    yield (e, c0, c1)
        if k - n < cap:
            for name, arity in fns:
                for args in product(range(k), repeat=arity):
                    for c in gen(h - 1, k + 1):
                        yield (FuncExpr(k, name, args), c)

    trees = [TreeScheme.build(n, x) for x in gen(r, n)]
    keyed = [(psi_scheme(m, t), depth(t), format_tree(t), t) for t in trees]
    keyed.sort(key=lambda x: x[:3])
    for *_, t in keyed:
        yield t


# -- the optimizer ------------------------------------------------------------

@dataclass
class OptResult:
    tree: TreeScheme
    psi: int
    certificate: dict = field(default_factory=dict)   # budget -> search nodes expanded
    bound: int = 0                                    # complexity of the problem scheme
    note: str = ""


class _Search:
    """Smallest-budget tree agreeing with the problem on a finite item set.

    Items are (structure, input tuple) pairs.  A subtree only has to be right
    on the items that reach it, so predicate tests that do not split the items
    and function values that duplicate an existing variable are skipped: a
    tree using them can be shortened without changing its behaviour on the
    items.
    """

    def __init__(self, sig, m, s, structures, labels, var_cap):
        self.sig, self.m, self.n = sig, m, s.n
        self.labels = labels
        self.var_cap = var_cap
        self.items = [(U, a) for U in structures for a in product(range(U.size), repeat=s.n)]
        self.target = [evaluate_problem(s, U, a) for U, a in self.items]
        self.preds = [(p.name, p.arity, m.weight(p.name)) for p in sig.predicates]
        # cheapest first: a value vector already produced is never recomputed,
        # so the first symbol to produce it must be the cheapest one
        self.fns = sorted(((f.name, f.arity, m.weight(f.name)) for f in sig.functions),
                          key=lambda t: t[2])
        self.eq_w = m.weight(EQUALITY) if sig.equality else None
        self.min_test = min([w for *_, w in self.preds] + ([self.eq_w] if self.eq_w else []),
                            default=None)
        self.memo: dict = {}
        self.expanded = 0

    def inputs(self):
        return [tuple(a[i] for _, a in self.items) for i in range(self.n)]

    def solve(self, budget: int):
        full = tuple(range(len(self.items)))
        self.scratch = _scratch_cap(budget, self.var_cap)
        return self._go(full, self.inputs(), budget)

    def _go(self, idx, vals, budget):
        wanted = {self.target[i] for i in idx}
        if len(wanted) <= 1:
            return wanted.pop() if wanted else self.labels[0]
        if budget == 0 or self.min_test is None:
            return None
        key = (idx, tuple(tuple(v[i] for i in idx) for v in vals), budget, self.scratch)
        if key in self.memo:
            return self.memo[key]
        self.expanded += 1
        result = self._expand(idx, vals, budget)
        self.memo[key] = result
        return result

    def _split(self, idx, test):
        yes = tuple(i for i in idx if test(i))
        if not yes or len(yes) == len(idx):
            return None
        no = tuple(i for i in idx if not test(i))
        return no, yes

    def _expand(self, idx, vals, budget):
        k = len(vals)
        items = self.items
        seen = set()
        tests = []
        for name, arity, w in self.preds:
            if w > budget:
                continue
            for args in product(range(k), repeat=arity):
                split = self._split(idx, lambda i: items[i][0].holds(name, [vals[a][i] for a in args]))
                if split:
                    tests.append((w, PredVars(name, args), split))
        if self.eq_w is not None and self.eq_w <= budget:
            for a in range(k):
                for b in range(a + 1, k):
                    split = self._split(idx, lambda i: vals[a][i] == vals[b][i])
                    if split:
                        tests.append((self.eq_w, EqVars(a, b), split))
        for w, expr, (no, yes) in tests:
            if (split_key := (no, w)) in seen:
                continue
            seen.add(split_key)
            c0 = self._go(no, vals, budget - w)
            if c0 is None:
                continue
            c1 = self._go(yes, vals, budget - w)
            if c1 is not None:
                return (expr, c0, c1)

        if k - self.n >= self.scratch:
            return None
        known = {tuple(v[i] for i in idx) for v in vals}
        for name, arity, w in self.fns:
            if w + self.min_test > budget:
                continue
            for args in product(range(k), repeat=arity):
                new = [0] * len(items)
                for i in idx:
                    new[i] = items[i][0].apply(name, [vals[a][i] for a in args])
                sig_vec = tuple(new[i] for i in idx)
                if sig_vec in known:
                    continue
                known.add(sig_vec)
                sub = self._go(idx, vals + [tuple(new)], budget - w)
                if sub is not None:
                    return (FuncExpr(k, name, args), sub)
        return None


def optimize(s: ProblemScheme, sig: Signature, spec: ClassSpec, alpha: Optional[Formula] = None,
             m: ComplexityMeasure | None = None, method: str = "brute",
             var_cap: int | None = DEFAULT_SCRATCH_CLAMP,
             guard: int = DEFAULT_GUARD) -> OptResult:
    """A minimum-complexity tree solving ``s`` on the class restricted by ``alpha``.

    Budgets ``0, 1, ..., psi(s)`` are tried in turn; the tree carrying exactly
    the expressions of ``s`` on every path costs ``psi(s)``, so the loop
    always ends with a solver.  The winner is re-checked with
    :func:`solves_relative` using ``method``.
    """
    check_problem(sig, s)
    m = m or ComplexityMeasure.depth(sig)
    bound = psi_problem(m, s)
    labels = sorted(s.values())
    structures = list(enumerate_structures(sig, restrict(spec, alpha), guard))
    if not structures:
        return OptResult(TreeScheme.build(s.n, labels[0]), 0, {}, bound,
                         "class is empty: every tree with matching arity solves")
    search = _Search(sig, m, s, structures, labels, var_cap)
    certificate = {}
    for budget in range(bound + 1):
        before = search.expanded
        found = search.solve(budget)
        certificate[budget] = search.expanded - before
        if found is None:
            continue
        tree = TreeScheme.build(s.n, found)
        verdict = solves_relative(tree, s, sig, spec, alpha, method, guard,
                                  structures=structures if method == "brute" else None)
        if not verdict.solves:
            raise OptimizerError(f"search result does not solve the problem: {verdict}")
        psi = psi_scheme(m, tree)
        if psi > budget:
            raise OptimizerError(f"search result costs {psi}, budget was {budget}")
        return OptResult(tree, psi, certificate, bound)
    raise OptimizerError(f"no solver found with complexity <= {bound}; "
                         f"raise var_cap (currently {var_cap})")


def sat_via_optimizer(alpha: Optional[Formula], gamma, sig: Signature, spec: ClassSpec,
                      m: ComplexityMeasure | None = None,
                      guard: int = DEFAULT_GUARD) -> SatVerdict:
    """Satisfiability of ``alpha & gamma`` (``gamma`` existential) via optimization.

    For each DNF conjunct the problem "is this conjunct true here" is
    optimized; the conjunction is satisfiable in the class iff some optimum
    differs from the single terminal labelled 0.
    """
    n, dnf = _existential_block(gamma)
    bound = spec_bound(spec)
    for conjunct in dnf:
        _, problem = scheme_from_literals(n, conjunct, (0, 1), sig)
        result = optimize(problem, sig, spec, alpha, m, guard=guard)
        if result.tree.nested() != 0:
            for U in enumerate_structures(sig, restrict(spec, alpha), guard):
                if any(evaluate_problem(problem, U, a) == 1
                       for a in product(range(U.size), repeat=n)):
                    return Sat(U)
            raise OptimizerError("optimum is not the zero tree but no structure outputs 1")
    return UnsatUpTo(bound)


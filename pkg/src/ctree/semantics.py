"""Finite structures, model checking and evaluation of schemes.

Trees are evaluated with registers: function nodes store a value, predicate
nodes branch on the truth of their expression.  A register that was never
written reads as the last input component, which mirrors the constant tail
of the term sequences in :mod:`ctree.schemes`.  The path-formula semantics
(:func:`check_realizable_unique`) is kept as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Union

from .logic import (And, Eq, Exists, Forall, Formula, Imp, LogicError, Not, Or, Pred,
                    Signature, Var, check_formula)
from .schemes import (EqVars, FunctionNode, ProblemScheme, TerminalNode, TreeScheme,
                      make_path, path_enumerate, special_representation)

DEFAULT_GUARD = 2_000_000


class ExplosionError(RuntimeError):
    """Raised when an enumeration would exceed the configured guard."""

    def __init__(self, what: str, count: int, guard: int):
        self.count = count
        self.guard = guard
        super().__init__(f"{what}: {count} items would be enumerated (guard {guard})")


class UnassignedVariable(LogicError):
    pass


@dataclass(frozen=True)
class FiniteStructure:
    """Universe ``{0..size-1}`` with one flat row-major table per symbol.

    ``tables`` follows the signature's symbol order; predicate tables hold
    0/1, function tables hold universe elements.
    """
    sig: Signature
    size: int
    tables: tuple
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("universe must be nonempty")
        tables = tuple(tuple(int(v) for v in t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        if len(tables) != len(self.sig.symbols):
            raise ValueError("one table per signature symbol expected")
        index = {}
        for sym, table in zip(self.sig.symbols, tables):
            if len(table) != self.size ** sym.arity:
                raise ValueError(f"table for {sym.name!r} needs {self.size ** sym.arity} entries")
            hi = 2 if sym.is_pred else self.size
            if any(not 0 <= v < hi for v in table):
                raise ValueError(f"table for {sym.name!r} has out-of-range entries")
            index[sym.name] = table
        object.__setattr__(self, "_index", index)

    @classmethod
    def make(cls, sig: Signature, size: int, **tables) -> "FiniteStructure":
        return cls(sig, size, tuple(tables[s.name] for s in sig.symbols))

    def _pos(self, args) -> int:
        i = 0
        for a in args:
            i = i * self.size + a
        return i

    def holds(self, name: str, args) -> bool:
        return bool(self._index[name][self._pos(args)])

    def apply(self, name: str, args) -> int:
        return self._index[name][self._pos(args)]

    def table(self, name: str) -> tuple:
        return self._index[name]

    @property
    def universe(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class Explicit:
    structures: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "structures", tuple(self.structures))


@dataclass(frozen=True)
class Bounded:
    max_size: int
    constraint: Optional[Formula] = None

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")


ClassSpec = Union[Explicit, Bounded]


# -- model checking -----------------------------------------------------------

def eval_term(U: FiniteStructure, t, env) -> int:
    if isinstance(t, Var):
        try:
            return env[t.index]
        except KeyError:
            raise UnassignedVariable(f"x{t.index} is not assigned") from None
    return U.apply(t.symbol, [eval_term(U, a, env) for a in t.args])


def model_check(U: FiniteStructure, f: Formula, assignment=None) -> bool:
    """Tarskian truth of ``f`` in ``U`` under a partial assignment."""
    env = dict(assignment or {})
    return _check(U, f, env)


def _check(U, f, env) -> bool:
    if isinstance(f, Pred):
        return U.holds(f.symbol, [eval_term(U, a, env) for a in f.args])
    if isinstance(f, Eq):
        return eval_term(U, f.left, env) == eval_term(U, f.right, env)
    if isinstance(f, Not):
        return not _check(U, f.arg, env)
    if isinstance(f, And):
        return all(_check(U, a, env) for a in f.args)
    if isinstance(f, Or):
        return any(_check(U, a, env) for a in f.args)
    if isinstance(f, Imp):
        return (not _check(U, f.left, env)) or _check(U, f.right, env)
    if isinstance(f, (Forall, Exists)):
        saved = env.get(f.var, None)
        had = f.var in env
        want_all = isinstance(f, Forall)
        result = want_all
        for a in range(U.size):
            env[f.var] = a
            if _check(U, f.body, env) != want_all:
                result = not want_all
                break
        if had:
            env[f.var] = saved
        else:
            del env[f.var]
        return result
    raise LogicError(f"not a formula: {f!r}")


# -- trees and problems -------------------------------------------------------

@dataclass(frozen=True)
class Evaluation:
    label: int
    path: object          # CompletePath
    trace: tuple          # (node index, registers written so far) before each node


def _read(regs: dict, inputs, i: int) -> int:
    if i in regs:
        return regs[i]
    return inputs[i] if i < len(inputs) else inputs[-1]


def _expr_truth(U: FiniteStructure, e, regs, inputs) -> bool:
    if isinstance(e, EqVars):
        return _read(regs, inputs, e.left) == _read(regs, inputs, e.right)
    return U.holds(e.symbol, [_read(regs, inputs, a) for a in e.args])


def run_tree(S: TreeScheme, U: FiniteStructure, inputs) -> int:
    """Label computed by the tree; the fast path without any bookkeeping."""
    regs: dict = {}
    node = S.nodes[S.root]
    while True:
        if isinstance(node, TerminalNode):
            return node.label
        e = node.expr
        if isinstance(node, FunctionNode):
            regs[e.target] = U.apply(e.symbol, [_read(regs, inputs, a) for a in e.args])
            node = S.nodes[node.child]
        else:
            node = S.nodes[node.child1 if _expr_truth(U, e, regs, inputs) else node.child0]


def evaluate_tree(S: TreeScheme, U: FiniteStructure, inputs) -> Evaluation:
    inputs = tuple(inputs)
    if len(inputs) != S.n:
        raise ValueError(f"expected {S.n} inputs, got {len(inputs)}")
    regs: dict = {}
    nodes, edges, trace = [], [], []
    i = S.root
    while True:
        node = S.nodes[i]
        trace.append((i, dict(regs)))
        nodes.append(i)
        if isinstance(node, TerminalNode):
            break
        e = node.expr
        if isinstance(node, FunctionNode):
            regs[e.target] = U.apply(e.symbol, [_read(regs, inputs, a) for a in e.args])
            edges.append(None)
            i = node.child
        else:
            c = 1 if _expr_truth(U, e, regs, inputs) else 0
            edges.append(c)
            i = node.child1 if c else node.child0
    path = make_path(S, nodes, edges, U.sig)
    return Evaluation(path.label, path, tuple(trace))


def realizable(path, U: FiniteStructure, inputs) -> bool:
    env = dict(enumerate(inputs))
    return all(model_check(U, f, env) for f in path.formulas)


def check_realizable_unique(S: TreeScheme, U: FiniteStructure, inputs, paths=None) -> bool:
    """Exactly one complete path has all its formulas true on ``inputs``."""
    paths = path_enumerate(S, U.sig) if paths is None else paths
    return sum(realizable(p, U, inputs) for p in paths) == 1


_special = lru_cache(maxsize=4096)(special_representation)


def evaluate_problem(s: ProblemScheme, U: FiniteStructure, inputs) -> int:
    inputs = tuple(inputs)
    if len(inputs) != s.n:
        raise ValueError(f"expected {s.n} inputs, got {len(inputs)}")
    env = dict(enumerate(inputs))
    rep = _special(s)
    return s.value(tuple(int(_check(U, a, env)) for a in rep.atoms))


@dataclass(frozen=True)
class Counterexample:
    inputs: tuple
    expected: int
    got: int


def first_counterexample(S: TreeScheme, s: ProblemScheme, U: FiniteStructure):
    """First input tuple (lexicographic) where tree and problem disagree, or None."""
    if S.n != s.n:
        raise ValueError(f"arity mismatch: tree has {S.n} inputs, problem {s.n}")
    for inputs in product(range(U.size), repeat=S.n):
        want = evaluate_problem(s, U, inputs)
        got = run_tree(S, U, inputs)
        if want != got:
            return Counterexample(inputs, want, got)
    return None


def solves_on(S: TreeScheme, s: ProblemScheme, U: FiniteStructure) -> bool:
    return first_counterexample(S, s, U) is None


# -- enumeration of structures ------------------------------------------------

def count_structures(sig: Signature, max_size: int) -> int:
    total = 0
    for m in range(1, max_size + 1):
        count = 1
        for s in sig.symbols:
            count *= (2 if s.is_pred else m) ** (m ** s.arity)
        total += count
    return total


def structures_of_size(sig: Signature, m: int) -> Iterator[FiniteStructure]:
    shapes = [(m ** s.arity, 2 if s.is_pred else m) for s in sig.symbols]
    ranges = [range(hi) for cells, hi in shapes for _ in range(cells)]
    for flat in product(*ranges):
        tables, pos = [], 0
        for cells, _ in shapes:
            tables.append(flat[pos:pos + cells])
            pos += cells
        yield FiniteStructure(sig, m, tuple(tables))


def enumerate_structures(sig: Signature, spec: ClassSpec,
                         guard: int = DEFAULT_GUARD) -> Iterator[FiniteStructure]:
    """Structures of the class in a fixed order: size ascending, then
    lexicographic over the concatenated tables."""
    if isinstance(spec, Explicit):
        yield from spec.structures
        return
    count = count_structures(sig, spec.max_size)
    if count > guard:
        raise ExplosionError("structure enumeration", count, guard)
    if spec.constraint is not None:
        check_formula(sig, spec.constraint)
    for m in range(1, spec.max_size + 1):
        for U in structures_of_size(sig, m):
            if spec.constraint is None or model_check(U, spec.constraint):
                yield U


def restrict(spec: ClassSpec, alpha: Formula | None) -> ClassSpec:
    """The subclass of ``spec`` whose structures satisfy ``alpha`` too."""
    if alpha is None:
        return spec
    if isinstance(spec, Explicit):
        return Explicit(tuple(U for U in spec.structures if model_check(U, alpha)))
    if spec.constraint is None:
        return Bounded(spec.max_size, alpha)
    return Bounded(spec.max_size, And((spec.constraint, alpha)))


def spec_bound(spec: ClassSpec) -> int:
    if isinstance(spec, Bounded):
        return spec.max_size
    return max((U.size for U in spec.structures), default=0)

"""Expression sequences, computation-tree schemes and problem schemes.

Variables are plain integers (``3`` is ``x3``).  A tree scheme is an indexed
node store; the helper :meth:`TreeScheme.build` assembles one from nested
tuples, numbering nodes in preorder:

    >>> from ctree.schemes import TreeScheme, PredVars, FuncExpr
    >>> t = TreeScheme.build(1, (PredVars("r", (0,)), (FuncExpr(0, "f", (0,)),
    ...                          (PredVars("r", (0,)), 3, 2)), 1))
    >>> len(t.nodes)
    6
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Union

from .logic import (App, Eq, Formula, Lit, LogicError, Not, Or, Pred, Signature,
                    Var, conj)

MAX_PREDICATES = 16


class SchemeError(ValueError):
    pass


class MissingPredicateSymbol(SchemeError):
    pass


# -- expressions --------------------------------------------------------------

@dataclass(frozen=True)
class FuncExpr:
    """``x_target <= symbol(x_args...)``"""
    target: int
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def variables(self):
        return (self.target, *self.args)

    def __str__(self):
        return f"x{self.target} <= {self.symbol}(" + ",".join(f"x{a}" for a in self.args) + ")"


@dataclass(frozen=True)
class EqVars:
    left: int
    right: int

    symbol = "="

    def variables(self):
        return (self.left, self.right)

    def __str__(self):
        return f"x{self.left} = x{self.right}"


@dataclass(frozen=True)
class PredVars:
    symbol: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def variables(self):
        return self.args

    def __str__(self):
        return f"{self.symbol}(" + ",".join(f"x{a}" for a in self.args) + ")"


PredExpr = Union[EqVars, PredVars]
Expression = Union[FuncExpr, EqVars, PredVars]


def is_predicate(e: Expression) -> bool:
    return isinstance(e, (EqVars, PredVars))


def check_expression(sig: Signature, e: Expression):
    if isinstance(e, EqVars):
        if not sig.equality:
            raise SchemeError("equality expression with equality off")
        return
    s = sig.lookup(e.symbol)
    if s.is_pred != isinstance(e, PredVars):
        raise SchemeError(f"{e.symbol!r} used with the wrong kind")
    if len(e.args) != s.arity:
        raise SchemeError(f"{e.symbol!r} expects {s.arity} arguments, got {len(e.args)}")


@dataclass(frozen=True)
class ExprSequence:
    n: int
    exprs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "exprs", tuple(self.exprs))
        if self.n < 1:
            raise SchemeError("input arity must be at least 1")


@dataclass(frozen=True)
class TermVector:
    """A finite window of an infinite term sequence plus its constant tail."""
    items: tuple
    tail: object

    def __getitem__(self, j: int):
        return self.items[j] if j < len(self.items) else self.tail

    def set(self, j: int, term) -> "TermVector":
        items = list(self.items)
        while len(items) <= j:
            items.append(self.tail)
        items[j] = term
        return TermVector(tuple(items), self.tail)


def _width(seq: ExprSequence) -> int:
    idx = [v for e in seq.exprs for v in e.variables()]
    return max([seq.n - 1, *idx]) + 1


def term_sequence(seq: ExprSequence) -> list[TermVector]:
    """Rows ``M_1 .. M_{m+1}``: the term held by each variable before each
    expression, plus the final row after the last one."""
    width = _width(seq)
    items = tuple(Var(min(j, seq.n - 1)) for j in range(width))
    rows = [TermVector(items, Var(seq.n - 1))]
    for e in seq.exprs:
        cur = rows[-1]
        if isinstance(e, FuncExpr):
            cur = cur.set(e.target, App(e.symbol, tuple(cur[a] for a in e.args)))
        rows.append(cur)
    return rows


def _atom_at(row: TermVector, e: PredExpr):
    if isinstance(e, EqVars):
        return Eq(row[e.left], row[e.right])
    return Pred(e.symbol, tuple(row[a] for a in e.args))


def kappa(seq: ExprSequence, i: int):
    """Atomic formula over the inputs attached to the ``i``-th (1-based)
    expression, which must be a predicate expression."""
    if not 1 <= i <= len(seq.exprs):
        raise IndexError(f"expression index {i} out of range 1..{len(seq.exprs)}")
    e = seq.exprs[i - 1]
    if not is_predicate(e):
        raise SchemeError(f"expression {i} ({e}) is not a predicate expression")
    return _atom_at(term_sequence(ExprSequence(seq.n, seq.exprs[:i - 1]))[-1], e)


def kappas(seq: ExprSequence) -> dict[int, object]:
    """``kappa`` for every predicate expression, in one pass."""
    rows = term_sequence(seq)
    return {i + 1: _atom_at(rows[i], e) for i, e in enumerate(seq.exprs) if is_predicate(e)}


# -- tree schemes -------------------------------------------------------------

@dataclass(frozen=True)
class FunctionNode:
    expr: FuncExpr
    child: int


@dataclass(frozen=True)
class PredicateNode:
    expr: PredExpr
    child0: int
    child1: int


@dataclass(frozen=True)
class TerminalNode:
    label: int


Node = Union[FunctionNode, PredicateNode, TerminalNode]


def children(node: Node) -> tuple[int, ...]:
    if isinstance(node, FunctionNode):
        return (node.child,)
    if isinstance(node, PredicateNode):
        return (node.child0, node.child1)
    return ()


@dataclass(frozen=True)
class TreeScheme:
    n: int
    nodes: tuple
    root: int = 0

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if self.n < 1:
            raise SchemeError("input arity must be at least 1")
        if not 0 <= self.root < len(self.nodes):
            raise SchemeError("root index out of range")
        parents = [0] * len(self.nodes)
        for node in self.nodes:
            if isinstance(node, TerminalNode) and node.label < 0:
                raise SchemeError("terminal labels are natural numbers")
            if isinstance(node, FunctionNode) and not isinstance(node.expr, FuncExpr):
                raise SchemeError("function node needs a function expression")
            if isinstance(node, PredicateNode) and not is_predicate(node.expr):
                raise SchemeError("predicate node needs a predicate expression")
            for c in children(node):
                if not 0 <= c < len(self.nodes):
                    raise SchemeError(f"child index {c} out of range")
                parents[c] += 1
        if parents[self.root]:
            raise SchemeError("root has a parent")
        for i, p in enumerate(parents):
            if i != self.root and p != 1:
                raise SchemeError(f"node {i} has {p} parents")
        seen, todo = set(), [self.root]
        while todo:
            i = todo.pop()
            seen.add(i)
            todo.extend(children(self.nodes[i]))
        if len(seen) != len(self.nodes):
            raise SchemeError("node graph is not a single rooted tree")

    @classmethod
    def build(cls, n: int, spec) -> "TreeScheme":
        """Nested form: an int is a terminal label, ``(FuncExpr, sub)`` a
        function node, ``(PredExpr, sub0, sub1)`` a predicate node."""
        nodes: list = []

        def go(x) -> int:
            i = len(nodes)
            nodes.append(None)
            if isinstance(x, int):
                nodes[i] = TerminalNode(x)
            elif isinstance(x[0], FuncExpr) and len(x) == 2:
                nodes[i] = FunctionNode(x[0], go(x[1]))
            elif is_predicate(x[0]) and len(x) == 3:
                c0 = go(x[1])
                nodes[i] = PredicateNode(x[0], c0, go(x[2]))
            else:
                raise SchemeError(f"bad nested tree {x!r}")
            return i

        go(spec)
        return cls(n, tuple(nodes), 0)

    def nested(self, i: int | None = None):
        node = self.nodes[self.root if i is None else i]
        if isinstance(node, TerminalNode):
            return node.label
        if isinstance(node, FunctionNode):
            return (node.expr, self.nested(node.child))
        return (node.expr, self.nested(node.child0), self.nested(node.child1))

    def canonical(self) -> "TreeScheme":
        """Same tree with nodes renumbered in preorder."""
        return TreeScheme.build(self.n, self.nested())

    def terminals(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if isinstance(nd, TerminalNode)]

    def expressions(self):
        return [nd.expr for nd in self.nodes if not isinstance(nd, TerminalNode)]

    def variables(self) -> set[int]:
        return {v for e in self.expressions() for v in e.variables()}

    def labels(self) -> set[int]:
        return {self.nodes[i].label for i in self.terminals()}


def check_scheme(sig: Signature, scheme: TreeScheme):
    for e in scheme.expressions():
        check_expression(sig, e)


def depth(scheme: TreeScheme) -> int:
    """Largest number of expression nodes on a root-to-terminal path."""
    def go(i):
        node = scheme.nodes[i]
        cs = children(node)
        return 0 if not cs else 1 + max(go(c) for c in cs)
    return go(scheme.root)


@dataclass(frozen=True)
class CompletePath:
    nodes: tuple          # node indices, root first, terminal last
    edges: tuple          # outgoing edge label per non-terminal node (None for function nodes)
    exprs: tuple
    formulas: tuple       # the formula set attached to the path
    label: int

    @property
    def pi(self) -> Formula:
        return conj(self.formulas)

    @property
    def terminal(self) -> int:
        return self.nodes[-1]


def trivial_formula(sig: Signature):
    """The formula attached to a path without predicate nodes."""
    if sig.equality:
        return Eq(Var(0), Var(0))
    if not sig.predicates:
        raise MissingPredicateSymbol("no-equality mode needs a predicate symbol in the signature")
    r = sig.predicates[0]
    atom = Pred(r.name, (Var(0),) * r.arity)
    return Or((Not(atom), atom))


def make_path(scheme: TreeScheme, nodes, edges, sig: Signature) -> CompletePath:
    exprs = tuple(scheme.nodes[i].expr for i in nodes[:-1])
    atoms = kappas(ExprSequence(scheme.n, exprs))
    formulas = []
    for pos, c in enumerate(edges):
        if c is not None:
            atom = atoms[pos + 1]
            formulas.append(atom if c == 1 else Not(atom))
    if not formulas:
        formulas = [trivial_formula(sig)]
    return CompletePath(tuple(nodes), tuple(edges), exprs, tuple(formulas),
                        scheme.nodes[nodes[-1]].label)


def path_enumerate(scheme: TreeScheme, sig: Signature) -> list[CompletePath]:
    """Every complete path, ordered by the index of its terminal node."""
    raw = []

    def go(i, nodes, edges):
        node = scheme.nodes[i]
        if isinstance(node, TerminalNode):
            raw.append((nodes + [i], edges))
        elif isinstance(node, FunctionNode):
            go(node.child, nodes + [i], edges + [None])
        else:
            go(node.child0, nodes + [i], edges + [0])
            go(node.child1, nodes + [i], edges + [1])

    go(scheme.root, [], [])
    raw.sort(key=lambda p: p[0][-1])
    return [make_path(scheme, nodes, edges, sig) for nodes, edges in raw]


# -- problem schemes ----------------------------------------------------------

def delta_index(delta) -> int:
    """Position of a 0/1 tuple in binary order (first component most significant)."""
    out = 0
    for d in delta:
        out = 2 * out + (1 if d else 0)
    return out


def all_deltas(k: int):
    return product((0, 1), repeat=k)


@dataclass(frozen=True)
class ProblemScheme:
    n: int
    nu: tuple             # nu[delta_index(delta)] for every delta in {0,1}^k
    exprs: tuple

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(self.nu))
        object.__setattr__(self, "exprs", tuple(self.exprs))
        if self.n < 1:
            raise SchemeError("input arity must be at least 1")
        if not self.exprs:
            raise SchemeError("a problem scheme needs at least one expression")
        k = self.k
        if k < 1:
            raise SchemeError("a problem scheme needs at least one predicate expression")
        if k > MAX_PREDICATES:
            raise SchemeError(f"at most {MAX_PREDICATES} predicate expressions are supported")
        if len(self.nu) != 2 ** k:
            raise SchemeError(f"nu must have {2 ** k} entries, got {len(self.nu)}")
        if any(v < 0 for v in self.nu):
            raise SchemeError("nu values are natural numbers")

    @classmethod
    def from_table(cls, n: int, table: dict, exprs) -> "ProblemScheme":
        exprs = tuple(exprs)
        k = sum(map(is_predicate, exprs))
        return cls(n, tuple(table[d] for d in all_deltas(k)), exprs)

    @property
    def k(self) -> int:
        return sum(map(is_predicate, self.exprs))

    def value(self, delta) -> int:
        return self.nu[delta_index(delta)]

    def values(self) -> set[int]:
        return set(self.nu)

    @property
    def sequence(self) -> ExprSequence:
        return ExprSequence(self.n, self.exprs)


def check_problem(sig: Signature, s: ProblemScheme):
    for e in s.exprs:
        check_expression(sig, e)


@dataclass(frozen=True)
class SpecialRepresentation:
    n: int
    nu: tuple
    atoms: tuple

    def pi(self, delta) -> Formula:
        return conj(a if d else Not(a) for a, d in zip(self.atoms, delta))


def special_representation(s: ProblemScheme) -> SpecialRepresentation:
    atoms = kappas(s.sequence)
    return SpecialRepresentation(s.n, s.nu, tuple(atoms[i] for i in sorted(atoms)))


def problem_tree(s: ProblemScheme) -> TreeScheme:
    """A tree every path of which carries exactly the expressions of ``s``;
    it solves ``s`` over every structure."""
    def go(i, delta):
        if i == len(s.exprs):
            return s.value(delta)
        e = s.exprs[i]
        if isinstance(e, FuncExpr):
            return (e, go(i + 1, delta))
        return (e, go(i + 1, delta + (0,)), go(i + 1, delta + (1,)))
    return TreeScheme.build(s.n, go(0, ()))


# -- term compilation ---------------------------------------------------------

def compile_terms(n: int, atoms, equality: bool = True):
    """Compile atoms over ``x0..x_{n-1}`` to expressions.

    Each distinct compound subterm gets one scratch variable ``x_n, x_{n+1},
    ...`` in first-use order; returns ``(function exprs, predicate exprs)``.
    """
    slots: dict = {}
    funcs: list[FuncExpr] = []

    def reg(t) -> int:
        if isinstance(t, Var):
            if t.index >= n:
                raise SchemeError(f"variable x{t.index} outside x0..x{n - 1}")
            return t.index
        if t not in slots:
            args = tuple(reg(a) for a in t.args)
            slots[t] = n + len(funcs)
            funcs.append(FuncExpr(slots[t], t.symbol, args))
        return slots[t]

    preds = []
    for a in atoms:
        if isinstance(a, Eq):
            if not equality:
                raise SchemeError("equality atom with equality off")
            preds.append(EqVars(reg(a.left), reg(a.right)))
        elif isinstance(a, Pred):
            preds.append(PredVars(a.symbol, tuple(reg(t) for t in a.args)))
        else:
            raise LogicError(f"not an atom: {a!r}")
    return funcs, preds


def scheme_from_literals(n: int, conjunct, nu_out=(0, 1), sig: Signature | None = None):
    """Tree and problem scheme for a conjunction of literals.

    The tree computes the literal values in order and exits with
    ``nu_out[0]`` on the first false literal, ``nu_out[1]`` when all hold.
    The problem scheme shares the expression list and maps exactly the
    conjunct's sign tuple to ``nu_out[1]``.
    """
    lits = [l if isinstance(l, Lit) else Lit(*l) for l in conjunct]
    if not lits:
        raise SchemeError("empty conjunct")
    equality = True if sig is None else sig.equality
    funcs, preds = compile_terms(n, [l.atom for l in lits], equality)
    no, yes = nu_out
    acc = yes
    for lit, e in reversed(list(zip(lits, preds))):
        acc = (e, no, acc) if lit.positive else (e, acc, no)
    for f in reversed(funcs):
        acc = (f, acc)
    tree = TreeScheme.build(n, acc)
    signs = tuple(1 if l.positive else 0 for l in lits)
    table = {d: (yes if d == signs else no) for d in all_deltas(len(lits))}
    problem = ProblemScheme.from_table(n, table, funcs + preds)
    return tree, problem


# -- variable normalization ---------------------------------------------------

def _rename_expr(e: Expression, m) -> Expression:
    if isinstance(e, FuncExpr):
        return FuncExpr(m(e.target), e.symbol, tuple(map(m, e.args)))
    if isinstance(e, EqVars):
        return EqVars(m(e.left), m(e.right))
    return PredVars(e.symbol, tuple(map(m, e.args)))


def normalize_variables(scheme: TreeScheme) -> TreeScheme:
    """Equivalent scheme whose variables lie in ``x0 .. x_{n+2^h-1}``.

    Scratch targets outside the inputs become ``x_n, x_{n+1}, ...`` in
    preorder of first assignment.  Variables that are never assigned always
    hold the initial value of ``x_{n-1}``; they are mapped to ``x_{n-1}``
    unless some node overwrites ``x_{n-1}``, in which case they share one
    extra never-assigned variable instead.
    """
    n = scheme.n
    order: list[int] = []
    targets: set[int] = set()

    def go(i):
        node = scheme.nodes[i]
        if isinstance(node, FunctionNode):
            targets.add(node.expr.target)
            if node.expr.target >= n and node.expr.target not in order:
                order.append(node.expr.target)
        for c in children(node):
            go(c)

    go(scheme.root)
    scratch = {v: n + k for k, v in enumerate(order)}
    idle = n - 1 if (n - 1) not in targets else n + len(order)

    def m(v: int) -> int:
        if v < n:
            return v
        return scratch.get(v, idle)

    nodes = []
    for node in scheme.nodes:
        if isinstance(node, FunctionNode):
            node = FunctionNode(_rename_expr(node.expr, m), node.child)
        elif isinstance(node, PredicateNode):
            node = PredicateNode(_rename_expr(node.expr, m), node.child0, node.child1)
        nodes.append(node)
    return TreeScheme(n, tuple(nodes), scheme.root)

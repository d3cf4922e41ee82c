"""Signatures, terms, first-order formulas and their normal forms."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Union

FORALL, EXISTS = "A", "E"
_VAR_RE = re.compile(r"^x(\d+)$")


class LogicError(ValueError):
    pass


class SignatureError(LogicError):
    pass


# -- signatures ---------------------------------------------------------------

@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str  # "pred" or "fn"
    arity: int

    @property
    def is_pred(self) -> bool:
        return self.kind == "pred"


@dataclass(frozen=True)
class Signature:
    symbols: tuple[Symbol, ...]
    equality: bool = False
    infinite: bool = False
    allow_constants: bool = False

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        seen = set()
        for s in self.symbols:
            if s.name in seen:
                raise SignatureError(f"duplicate symbol {s.name!r}")
            seen.add(s.name)
            if s.kind not in ("pred", "fn"):
                raise SignatureError(f"bad symbol kind {s.kind!r}")
            if _VAR_RE.match(s.name) or s.name in ("=", "<="):
                raise SignatureError(f"reserved symbol name {s.name!r}")
            if s.arity < 0:
                raise SignatureError(f"negative arity for {s.name!r}")
            if s.is_pred and s.arity == 0:
                raise SignatureError(f"nullary predicate symbol {s.name!r}")
            if not s.is_pred and s.arity == 0 and not self.allow_constants:
                raise SignatureError(f"nullary function symbol {s.name!r} needs allow_constants")

    @classmethod
    def of(cls, preds=None, fns=None, **kw) -> "Signature":
        """Shorthand: ``Signature.of({'r': 1}, {'f': 1}, equality=True)``."""
        syms = [Symbol(k, "pred", a) for k, a in (preds or {}).items()]
        syms += [Symbol(k, "fn", a) for k, a in (fns or {}).items()]
        return cls(tuple(syms), **kw)

    def lookup(self, name: str) -> Symbol:
        for s in self.symbols:
            if s.name == name:
                return s
        raise SignatureError(f"unknown symbol {name!r}")

    def __contains__(self, name) -> bool:
        return any(s.name == name for s in self.symbols)

    @property
    def predicates(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.symbols if s.is_pred)

    @property
    def functions(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.symbols if not s.is_pred)

    def with_equality(self, flag: bool) -> "Signature":
        return Signature(self.symbols, flag, self.infinite, self.allow_constants)


# -- terms and formulas -------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple

    def __str__(self):
        return f"{self.symbol}(" + ",".join(map(str, self.args)) + ")"


Term = Union[Var, App]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Pred:
    symbol: str
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


Atom = Union[Eq, Pred]
Formula = Union[Eq, Pred, Not, And, Or, Imp, Forall, Exists]
ATOMS = (Eq, Pred)
QUANTIFIERS = (Forall, Exists)


@dataclass(frozen=True)
class Lit:
    """A signed atom; ``positive=False`` stands for the negated atom."""
    atom: Atom
    positive: bool = True

    def negate(self) -> "Lit":
        return Lit(self.atom, not self.positive)

    def formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)

    def __str__(self):
        return ("+" if self.positive else "-") + format_formula(self.atom)


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        raise LogicError("empty conjunction")
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        raise LogicError("empty disjunction")
    return parts[0] if len(parts) == 1 else Or(parts)


def quantify(prefix: Iterable[tuple[str, int]], body: Formula) -> Formula:
    for q, v in reversed(tuple(prefix)):
        body = Forall(v, body) if q == FORALL else Exists(v, body)
    return body


def subformulas(f: Formula):
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.arg)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from subformulas(a)
    elif isinstance(f, Imp):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def term_vars(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def atom_terms(a: Atom) -> tuple:
    return (a.left, a.right) if isinstance(a, Eq) else a.args


def free_vars(f: Formula) -> set[int]:
    if isinstance(f, ATOMS):
        out = set()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        out = set()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Imp):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(g, QUANTIFIERS) for g in subformulas(f))


def uses_equality(f: Formula) -> bool:
    return any(isinstance(g, Eq) for g in subformulas(f))


def rename_term(t: Term, mapping: dict[int, int]) -> Term:
    if isinstance(t, Var):
        return Var(mapping.get(t.index, t.index))
    return App(t.symbol, tuple(rename_term(a, mapping) for a in t.args))


def rename_free(f: Formula, mapping: dict[int, int]) -> Formula:
    """Rename free variables (bound occurrences are left alone)."""
    if isinstance(f, Eq):
        return Eq(rename_term(f.left, mapping), rename_term(f.right, mapping))
    if isinstance(f, Pred):
        return Pred(f.symbol, tuple(rename_term(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(rename_free(f.arg, mapping))
    if isinstance(f, And):
        return And(tuple(rename_free(a, mapping) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(rename_free(a, mapping) for a in f.args))
    if isinstance(f, Imp):
        return Imp(rename_free(f.left, mapping), rename_free(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    return type(f)(f.var, rename_free(f.body, inner))


def check_term(sig: Signature, t: Term):
    if isinstance(t, Var):
        if t.index < 0:
            raise LogicError(f"bad variable index {t.index}")
        return
    s = sig.lookup(t.symbol)
    if s.is_pred:
        raise LogicError(f"{t.symbol!r} is a predicate symbol, used as a function")
    if len(t.args) != s.arity:
        raise LogicError(f"{t.symbol!r} expects {s.arity} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(sig, a)


def check_formula(sig: Signature, f: Formula):
    """Raise LogicError unless ``f`` is well formed over ``sig``."""
    for g in subformulas(f):
        if isinstance(g, Eq):
            if not sig.equality:
                raise LogicError("equality atom with equality off")
            check_term(sig, g.left)
            check_term(sig, g.right)
        elif isinstance(g, Pred):
            s = sig.lookup(g.symbol)
            if not s.is_pred:
                raise LogicError(f"{g.symbol!r} is a function symbol, used as a predicate")
            if len(g.args) != s.arity:
                raise LogicError(f"{g.symbol!r} expects {s.arity} arguments, got {len(g.args)}")
            for a in g.args:
                check_term(sig, a)


# -- printing -----------------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return f"({t.symbol})"
    return "(" + " ".join([t.symbol, *map(format_term, t.args)]) + ")"


def format_formula(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"(= {format_term(f.left)} {format_term(f.right)})"
    if isinstance(f, Pred):
        return "(" + " ".join([f.symbol, *map(format_term, f.args)]) + ")"
    if isinstance(f, Not):
        return f"(not {format_formula(f.arg)})"
    if isinstance(f, And):
        return "(and " + " ".join(map(format_formula, f.args)) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(map(format_formula, f.args)) + ")"
    if isinstance(f, Imp):
        return f"(imp {format_formula(f.left)} {format_formula(f.right)})"
    q = "forall" if isinstance(f, Forall) else "exists"
    return f"({q} x{f.var} {format_formula(f.body)})"


# -- prenex normal form -------------------------------------------------------

@dataclass(frozen=True)
class PrenexSentence:
    prefix: tuple[tuple[str, int], ...]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(tuple(p) for p in self.prefix))
        if not is_quantifier_free(self.matrix):
            raise LogicError("prenex matrix must be quantifier-free")

    @property
    def word(self) -> str:
        """The quantifier word over {A, E}."""
        return "".join(q for q, _ in self.prefix)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.prefix)

    def formula(self) -> Formula:
        return quantify(self.prefix, self.matrix)

    def __str__(self):
        return format_formula(self.formula())


def to_nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form without implications."""
    if isinstance(f, ATOMS):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return to_nnf(f.arg, not negate)
    if isinstance(f, Imp):
        return to_nnf(Or((Not(f.left), f.right)), negate)
    if isinstance(f, And):
        args = tuple(to_nnf(a, negate) for a in f.args)
        return Or(args) if negate else And(args)
    if isinstance(f, Or):
        args = tuple(to_nnf(a, negate) for a in f.args)
        return And(args) if negate else Or(args)
    body = to_nnf(f.body, negate)
    if isinstance(f, Forall):
        return Exists(f.var, body) if negate else Forall(f.var, body)
    return Forall(f.var, body) if negate else Exists(f.var, body)


def _rename_apart(f: Formula, env: dict[int, int], fresh) -> Formula:
    if isinstance(f, Eq):
        return Eq(rename_term(f.left, env), rename_term(f.right, env))
    if isinstance(f, Pred):
        return Pred(f.symbol, tuple(rename_term(a, env) for a in f.args))
    if isinstance(f, Not):
        return Not(_rename_apart(f.arg, env, fresh))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(_rename_apart(a, env, fresh) for a in f.args))
    v = next(fresh)
    return type(f)(v, _rename_apart(f.body, {**env, f.var: v}, fresh))


def _pull(f: Formula):
    if isinstance(f, QUANTIFIERS):
        q = FORALL if isinstance(f, Forall) else EXISTS
        prefix, matrix = _pull(f.body)
        return [(q, f.var)] + prefix, matrix
    if isinstance(f, (And, Or)):
        prefix, mats = [], []
        for a in f.args:
            p, m = _pull(a)
            prefix += p
            mats.append(m)
        return prefix, type(f)(tuple(mats))
    return [], f


def to_prenex(f: Formula) -> PrenexSentence:
    """Prenex form; bound variables renamed apart in left-to-right order.

    Fresh names start right above the largest free variable (at x0 for a
    sentence).  Pulling quantifiers out of a conjunction or disjunction is
    sound because universes are nonempty.
    """
    fv = free_vars(f)
    fresh = itertools.count(max(fv) + 1 if fv else 0)
    nnf = _rename_apart(to_nnf(f), {}, fresh)
    prefix, matrix = _pull(nnf)
    return PrenexSentence(tuple(prefix), matrix)


def prefix_of(f: Formula) -> PrenexSentence | None:
    """Read off the prefix of a syntactically prenex formula, else None."""
    prefix = []
    while isinstance(f, QUANTIFIERS):
        prefix.append((FORALL if isinstance(f, Forall) else EXISTS, f.var))
        f = f.body
    if not is_quantifier_free(f):
        return None
    return PrenexSentence(tuple(prefix), f)


# -- disjunctive normal form --------------------------------------------------

def _dnf(f: Formula) -> list[list[Lit]]:
    if isinstance(f, ATOMS):
        return [[Lit(f, True)]]
    if isinstance(f, Not):
        return [[Lit(f.arg, False)]]
    if isinstance(f, Or):
        return [c for a in f.args for c in _dnf(a)]
    if isinstance(f, And):
        out = [[]]
        for a in f.args:
            out = [c + d for c in out for d in _dnf(a)]
        return out
    raise LogicError("to_dnf needs a quantifier-free formula")


def to_dnf(m: Formula) -> list[list[Lit]]:
    """DNF as a list of conjuncts of literals.

    Repeated literals are dropped, and so are conjuncts containing a
    complementary pair; an empty result means the matrix is unsatisfiable.
    """
    if not is_quantifier_free(m):
        raise LogicError("to_dnf needs a quantifier-free formula")
    out, seen = [], set()
    for conjunct in _dnf(to_nnf(m)):
        lits = list(dict.fromkeys(conjunct))
        if any(l.negate() in lits for l in lits):
            continue
        key = frozenset(lits)
        if key in seen:
            continue
        seen.add(key)
        out.append(lits)
    return out


def dnf_formula(conjuncts: list[list[Lit]]) -> Formula | None:
    if not conjuncts:
        return None
    return disj(conj(l.formula() for l in c) for c in conjuncts)

"""Deciding whether a tree scheme solves a problem scheme over a class.

Two routes are offered.  ``brute`` evaluates tree and problem on every
structure and input.  ``reduction`` never runs the tree: for each complete
path and each sign tuple whose labels disagree it asks whether the sentence
``alpha & exists x0..x_{n-1} (path formulas & sign-tuple formulas)`` has a
model in the class.  The two must agree; ``--method both`` on the command
line checks that.

The converse direction, :func:`sat_via_solvability`, decides satisfiability
of ``alpha & beta`` (``beta`` existential) with solvability queries only.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

from .logic import (EXISTS, Formula, Lit, LogicError, PrenexSentence, Signature, conj,
                    prefix_of, quantify, rename_free, to_dnf, to_prenex)
from .prefix import P_EXISTS, pretty
from .satisfiability import PrefixViolation, Sat, SatVerdict, UnsatUpTo, sat_check
from .schemes import (EqVars, ProblemScheme, PredVars, TreeScheme, check_problem, check_scheme,
                      path_enumerate, scheme_from_literals, special_representation)
from .semantics import (ClassSpec, Counterexample, DEFAULT_GUARD, FiniteStructure,
                        enumerate_structures, first_counterexample, restrict, spec_bound)

METHODS = ("brute", "reduction")


@dataclass(frozen=True)
class Solves:
    checked: int = 0            # structures (brute) or sentences (reduction) examined

    @property
    def solves(self) -> bool:
        return True


@dataclass(frozen=True)
class StructureWitness:
    structure: FiniteStructure
    inputs: tuple
    expected: int
    got: int


@dataclass(frozen=True)
class ReductionWitness:
    path: object                # CompletePath
    delta: tuple
    sentence: Formula
    structure: FiniteStructure


@dataclass(frozen=True)
class FailsWith:
    witness: Union[StructureWitness, ReductionWitness, None]
    reason: str = "counterexample"

    @property
    def solves(self) -> bool:
        return False


SolveVerdict = Union[Solves, FailsWith]


def gamma_sentence(path, rep, delta) -> Formula:
    """``exists x0..x_{n-1} (pi_path & pi_delta)`` with both sides over the inputs."""
    body = conj([*path.formulas, rep.pi(delta)])
    return quantify([(EXISTS, i) for i in range(rep.n)], body)


def solves_relative(S: TreeScheme, s: ProblemScheme, sig: Signature, spec: ClassSpec,
                    alpha: Optional[Formula] = None, method: str = "brute",
                    guard: int = DEFAULT_GUARD, structures=None) -> SolveVerdict:
    """Does ``S`` solve ``s`` on every structure of the class satisfying ``alpha``?

    ``structures`` may carry a precomputed list for the brute route.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if S.n != s.n:
        return FailsWith(None, f"arity mismatch: tree has {S.n} inputs, problem {s.n}")
    check_scheme(sig, S)
    check_problem(sig, s)
    if method == "brute":
        if structures is None:
            structures = enumerate_structures(sig, restrict(spec, alpha), guard)
        count = 0
        for U in structures:
            count += 1
            cex: Counterexample | None = first_counterexample(S, s, U)
            if cex is not None:
                return FailsWith(StructureWitness(U, cex.inputs, cex.expected, cex.got))
        return Solves(count)

    rep = special_representation(s)
    count = 0
    for path in path_enumerate(S, sig):
        for delta in product((0, 1), repeat=len(rep.atoms)):
            if path.label == s.value(delta):
                continue
            gamma = gamma_sentence(path, rep, delta)
            sentence = gamma if alpha is None else conj([alpha, gamma])
            count += 1
            verdict = sat_check(sentence, sig, spec, guard)
            if verdict.sat:
                return FailsWith(ReductionWitness(path, delta, sentence, verdict.witness))
    return Solves(count)


def zero_problem(sig: Signature) -> ProblemScheme:
    """A one-input problem scheme whose function is constantly 0."""
    if sig.equality:
        return ProblemScheme(1, (0, 0), (EqVars(0, 0),))
    if not sig.predicates:
        raise LogicError("no-equality mode needs a predicate symbol")
    r = sig.predicates[0]
    return ProblemScheme(1, (0, 0), (PredVars(r.name, (0,) * r.arity),))


def _existential_block(beta) -> tuple[int, list[list[Lit]]]:
    """Input count and DNF of the matrix, with bound variables renamed to x0.."""
    ps = beta if isinstance(beta, PrenexSentence) else prefix_of(beta)
    if ps is None:
        ps = to_prenex(beta)
    if ps.word not in P_EXISTS:
        raise PrefixViolation(f"prefix {pretty(ps.word)} is not purely existential")
    mapping = {v: i for i, v in enumerate(ps.variables)}
    matrix = rename_free(ps.matrix, mapping)
    n = max(len(mapping), 1)
    return n, to_dnf(matrix)


def sat_via_solvability(alpha: Optional[Formula], beta, sig: Signature, spec: ClassSpec,
                        method: str = "brute", guard: int = DEFAULT_GUARD) -> SatVerdict:
    """Satisfiability of ``alpha & beta`` answered with solvability queries.

    One tree per DNF conjunct of ``beta``'s matrix outputs 1 exactly when the
    conjunct holds; the conjunction has a model in the class iff one of those
    trees fails to solve the constant-zero problem relative to ``alpha``.
    """
    n, dnf = _existential_block(beta)
    bound = spec_bound(spec)
    if not dnf:
        return UnsatUpTo(bound)
    zero = zero_problem(sig)
    if n != zero.n:
        zero = ProblemScheme(n, zero.nu, zero.exprs)
    for conjunct in dnf:
        tree, _ = scheme_from_literals(n, conjunct, (0, 1), sig)
        verdict = solves_relative(tree, zero, sig, spec, alpha, method, guard)
        if not verdict.solves:
            w = verdict.witness
            return Sat(w.structure)
    return UnsatUpTo(bound)


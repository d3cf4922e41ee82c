"""Bounded satisfiability and theory membership over enumerable classes.

Verdicts are honest about the bound: a search that finds nothing returns
:class:`UnsatUpTo`, never a bare "unsatisfiable".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .logic import Formula, LogicError, Not, Signature, check_formula, conj, free_vars, prefix_of
from .prefix import PrefixLanguage, pretty
from .semantics import (ClassSpec, DEFAULT_GUARD, FiniteStructure, enumerate_structures,
                        model_check, spec_bound)


class PrefixViolation(LogicError):
    pass


@dataclass(frozen=True)
class Sat:
    witness: FiniteStructure
    index: int = 0              # position of the witness in enumeration order

    @property
    def sat(self) -> bool:
        return True


@dataclass(frozen=True)
class UnsatUpTo:
    bound: int
    searched: int = 0

    @property
    def sat(self) -> bool:
        return False


SatVerdict = Union[Sat, UnsatUpTo]


def sat_check(sentence: Formula, sig: Signature, spec: ClassSpec,
              guard: int = DEFAULT_GUARD) -> SatVerdict:
    """First structure of the class (in enumeration order) satisfying ``sentence``."""
    if free_vars(sentence):
        raise LogicError("sat_check needs a sentence, found free variables "
                         + ", ".join(f"x{v}" for v in sorted(free_vars(sentence))))
    check_formula(sig, sentence)
    searched = 0
    for i, U in enumerate(enumerate_structures(sig, spec, guard)):
        searched += 1
        if model_check(U, sentence):
            return Sat(U, i)
    return UnsatUpTo(spec_bound(spec), searched)


def check_prefix(part: Formula, lang: PrefixLanguage) -> None:
    ps = prefix_of(part)
    if ps is None:
        raise PrefixViolation("sentence is not in prenex form")
    if ps.word not in lang:
        raise PrefixViolation(f"prefix {pretty(ps.word)} is not in {lang}")


def sat_conjunction(parts: Sequence[Formula], sig: Signature, spec: ClassSpec,
                    langs: Sequence[PrefixLanguage | None] | None = None,
                    guard: int = DEFAULT_GUARD) -> SatVerdict:
    """``sat_check`` on the conjunction of ``parts``.

    When ``langs`` is given, ``parts[i]`` must be prenex with its prefix in
    ``langs[i]`` (a ``None`` entry skips the check).
    """
    parts = list(parts)
    if langs is not None:
        if len(langs) != len(parts):
            raise ValueError("one prefix language (or None) per part expected")
        for part, lang in zip(parts, langs):
            if lang is not None:
                check_prefix(part, lang)
    return sat_check(conj(parts), sig, spec, guard)


def theory_member(sentence: Formula, sig: Signature, spec: ClassSpec,
                  guard: int = DEFAULT_GUARD) -> bool:
    """True iff no enumerated structure of the class falsifies ``sentence``."""
    return not sat_check(Not(sentence), sig, spec, guard).sat

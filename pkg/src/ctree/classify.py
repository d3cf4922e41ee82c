"""Decidability of conjunctive prefix classes.

A class is described by a signature summary (how many symbols of each
arity), the equality flag and prefix languages ``Pi_1 .. Pi_n``; a purely
existential conjunct is always implied.  Three theorems cover the cases:

* predicate symbols only (any equality mode): ``Thm5.2``, conditions d.1-d.4;
  the decidable/reduction dichotomy is asserted only for signatures with at
  least ``r0 + 1`` predicate symbols or declared infinite;
* function symbols, equality off: ``Thm5.3``, conditions c.1-c.3;
* function symbols, equality on: ``Thm5.4``, conditions b.1-b.3.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .prefix import (P1, P2, P3, P_EAE, P_EXISTS, PrefixLanguage, inclusion_witness,
                     missing_subword, pretty)

DEFAULT_R0 = 13

THM_PRED = "Thm5.2"
THM_FN = "Thm5.3"
THM_FN_EQ = "Thm5.4"

P12 = P1 | P2


class ClassificationError(ValueError):
    pass


def _items(x) -> tuple:
    return tuple(dict(x).items()) if isinstance(x, Mapping) else tuple(tuple(p) for p in x)


def _counts(x) -> tuple:
    merged = Counter()
    for arity, count in _items(x):
        merged[int(arity)] += int(count)
    return tuple(sorted((a, c) for a, c in merged.items() if c))


@dataclass(frozen=True)
class ClassDescription:
    """``preds``/``fns`` map arity to the number of symbols of that arity."""
    preds: tuple = ()
    fns: tuple = ()
    infinite: bool = False
    equality: bool = False
    prefix_sets: tuple = ()
    r0: int = DEFAULT_R0
    # raw arity maps as written, kept so that shape errors can be reported
    _raw: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_raw", (_items(self.preds), _items(self.fns)))
        object.__setattr__(self, "preds", _counts(self.preds))
        object.__setattr__(self, "fns", _counts(self.fns))
        object.__setattr__(self, "prefix_sets", tuple(self.prefix_sets))

    @property
    def n_preds(self) -> int:
        return sum(c for _, c in self.preds)

    @property
    def n_fns(self) -> int:
        return sum(c for _, c in self.fns)

    def pred_arities(self) -> set[int]:
        return {a for a, _ in self.preds}

    def fn_arities(self) -> set[int]:
        return {a for a, _ in self.fns}

    def fn_count(self, arity: int) -> int:
        return dict(self.fns).get(arity, 0)


@dataclass(frozen=True)
class Decidable:
    condition: str
    theorem: str
    note: str = ""

    def __str__(self):
        return f"DECIDABLE via {self.theorem}({self.condition})"


@dataclass(frozen=True)
class ReductionClass:
    theorem: str
    evidence: str

    def __str__(self):
        return f"REDUCTION-CLASS via {self.theorem}: {self.evidence}"


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __str__(self):
        return f"UNKNOWN: {self.reason}"


Verdict = Union[Decidable, ReductionClass, Unknown]


@dataclass(frozen=True)
class Condition:
    tag: str
    holds: bool
    detail: str


@dataclass(frozen=True)
class Report:
    theorem: Optional[str]
    conditions: tuple = ()
    verdict: Optional[Verdict] = None
    error: Optional[str] = None

    def lines(self) -> list[str]:
        if self.error:
            return [f"invalid description: {self.error}"]
        out = [f"theorem {self.theorem}"]
        out += [f"  ({c.tag}) {'yes' if c.holds else 'no '}  {c.detail}" for c in self.conditions]
        out.append(str(self.verdict))
        return out

    def __str__(self):
        return "\n".join(self.lines())


# -- validation ---------------------------------------------------------------

def validate(desc: ClassDescription) -> None:
    raw_preds, raw_fns = desc._raw
    for kind, raw in (("predicate", raw_preds), ("function", raw_fns)):
        for arity, count in raw:
            if int(count) < 0:
                raise ClassificationError(f"negative {kind} count for arity {arity}")
            if int(arity) < 0:
                raise ClassificationError(f"negative {kind} arity {arity}")
            if int(arity) == 0 and int(count) > 0:
                raise ClassificationError(f"nullary {kind} symbols are not allowed")
    if desc.r0 < 0:
        raise ClassificationError("r0 must be a natural number")
    for i, lang in enumerate(desc.prefix_sets, 1):
        if not isinstance(lang, PrefixLanguage):
            raise ClassificationError(f"prefix set {i} is not a prefix language")
        # languages are built from at least one generator, and every
        # generator contributes a word, so emptiness cannot arise here
        w = missing_subword(lang)
        if w is not None:
            raise ClassificationError(
                f"prefix set {i} is not closed under subwords: missing {pretty(w)}")


# -- condition tables ---------------------------------------------------------

def _all_within(desc, lang: PrefixLanguage, name: str) -> Condition:
    for i, pi in enumerate(desc.prefix_sets, 1):
        w = inclusion_witness(pi, lang)
        if w is not None:
            return Condition("", False, f"Pi_{i} contains {pretty(w)}, outside {name}")
    return Condition("", True, f"every Pi_i is within {name}")


def _tagged(tag: str, c: Condition) -> Condition:
    return Condition(tag, c.holds, c.detail)


def _d4(desc) -> Condition:
    sets = desc.prefix_sets
    if not sets:
        return Condition("d.4", False, "no prefix sets")
    fail = None
    for i0, pi0 in enumerate(sets, 1):
        w = inclusion_witness(pi0, P12)
        if w is not None:
            fail = fail or f"Pi_{i0} contains {pretty(w)}, outside P1|P2"
            continue
        bad = [(i, inclusion_witness(pi, P3)) for i, pi in enumerate(sets, 1) if i != i0]
        bad = [(i, w) for i, w in bad if w is not None]
        if not bad:
            return Condition("d.4", True, f"Pi_{i0} within P1|P2, all others within P3")
        i, w = bad[0]
        fail = f"with i0={i0}, Pi_{i} contains {pretty(w)}, outside P3"
    return Condition("d.4", False, fail)


def _conditions_pred(desc) -> list[Condition]:
    others = sorted(a for a in desc.pred_arities() if a != 1)
    d1 = Condition("d.1", not others,
                   "only 1-ary predicate symbols" if not others
                   else f"has a {others[0]}-ary predicate symbol")
    return [d1,
            _tagged("d.2", _all_within(desc, P1, "P1")),
            _tagged("d.3", _all_within(desc, P2, "P2")),
            _d4(desc)]


def _conditions_fn(desc) -> list[Condition]:
    c1 = Condition("c.1", desc.n_preds == 0,
                   "no predicate symbols" if desc.n_preds == 0
                   else f"{desc.n_preds} predicate symbol(s)")
    wide = sorted(a for a in desc.pred_arities() | desc.fn_arities() if a != 1)
    c2 = Condition("c.2", not wide, "only 1-ary symbols" if not wide
                   else f"has a symbol of arity {wide[0]}")
    return [c1, c2, _tagged("c.3", _all_within(desc, P_EAE, "P(E*AE*)"))]


def _fn_shape(desc) -> tuple[bool, str]:
    wide = sorted(a for a in desc.fn_arities() if a > 1)
    if wide:
        return False, f"has a {wide[0]}-ary function symbol"
    if desc.fn_count(1) > 1:
        return False, f"has {desc.fn_count(1)} 1-ary function symbols"
    return True, "at most one function symbol, 1-ary"


def _conditions_fn_eq(desc) -> list[Condition]:
    b1 = _tagged("b.1", _all_within(desc, P_EXISTS, "P(E*)"))
    ok_fn, fn_detail = _fn_shape(desc)
    wide_p = sorted(a for a in desc.pred_arities() if a != 1)
    b2_detail = fn_detail if not ok_fn else (
        f"has a {wide_p[0]}-ary predicate symbol" if wide_p else "only 1-ary predicates; " + fn_detail)
    b2 = Condition("b.2", ok_fn and not wide_p, b2_detail)
    b3_pre = _all_within(desc, P_EAE, "P(E*AE*)")
    b3 = Condition("b.3", ok_fn and b3_pre.holds,
                   b3_pre.detail if not b3_pre.holds else fn_detail)
    return [b1, b2, b3]


def _evidence_pred(desc) -> str:
    wide = max(desc.pred_arities())
    for i, pi in enumerate(desc.prefix_sets, 1):
        w = inclusion_witness(pi, P12)
        if w is not None:
            return f"{pretty(w)} in Pi_{i} (outside P1|P2) and a {wide}-ary predicate symbol"
    has_ae = [i for i, pi in enumerate(desc.prefix_sets, 1) if "AE" in pi]
    has_a3 = [i for i, pi in enumerate(desc.prefix_sets, 1) if "AAA" in pi]
    for i in has_ae:
        for j in has_a3:
            if i != j:
                return (f"{pretty('AE')} in Pi_{i}, {pretty('AAA')} in Pi_{j} "
                        f"and a {wide}-ary predicate symbol")
    raise AssertionError("conditions d.1-d.4 fail without evidence")


def _evidence_fn(desc) -> str:
    i = next(i for i, pi in enumerate(desc.prefix_sets, 1)
             if inclusion_witness(pi, P_EAE) is not None)
    wide_p = [a for a in desc.pred_arities() if a >= 2]
    sym = (f"a {max(wide_p)}-ary predicate symbol" if wide_p
           else f"a {max(desc.fn_arities())}-ary function symbol")
    return f"{pretty('AA')} in Pi_{i} and {sym}"


def _evidence_fn_eq(desc) -> str:
    with_a = [i for i, pi in enumerate(desc.prefix_sets, 1) if "A" in pi]
    with_aa = [i for i, pi in enumerate(desc.prefix_sets, 1) if "AA" in pi]
    if with_a and desc.fn_count(1) >= 2:
        return f"case (c.1): {pretty('A')} in Pi_{with_a[0]} and two 1-ary function symbols"
    wide_f = sorted(a for a in desc.fn_arities() if a > 1)
    if with_a and wide_f:
        return f"case (c.2): {pretty('A')} in Pi_{with_a[0]} and a {wide_f[-1]}-ary function symbol"
    wide_p = sorted(a for a in desc.pred_arities() if a > 1)
    if with_aa and wide_p:
        return (f"case (c.3): {pretty('AA')} in Pi_{with_aa[0]}, a {wide_p[-1]}-ary predicate "
                f"symbol and a function symbol")
    raise AssertionError("conditions b.1-b.3 fail without evidence")


# -- entry points -------------------------------------------------------------

def _route(desc):
    if desc.n_fns == 0:
        return THM_PRED, _conditions_pred(desc)
    if not desc.equality:
        return THM_FN, _conditions_fn(desc)
    return THM_FN_EQ, _conditions_fn_eq(desc)


_NOTES = {
    THM_PRED: "with equality, satisfiability and finite satisfiability agree up to finitely many sentences",
    THM_FN: "satisfiability and finite satisfiability agree on this class",
    THM_FN_EQ: "",
}


def _verdict(desc, thm, conds) -> Verdict:
    hit = next((c for c in conds if c.holds), None)
    if hit is not None:
        note = _NOTES[thm]
        if thm == THM_PRED and not desc.equality:
            note = ""
        return Decidable(hit.tag, thm, note)
    if thm == THM_PRED:
        if not desc.infinite and desc.n_preds < desc.r0 + 1:
            return Unknown(f"below r0+1 symbol threshold ({desc.n_preds} predicate "
                           f"symbols, r0={desc.r0})")
        return ReductionClass(thm, _evidence_pred(desc))
    if thm == THM_FN:
        return ReductionClass(thm, _evidence_fn(desc))
    return ReductionClass(thm, _evidence_fn_eq(desc))


def classify(desc: ClassDescription) -> Verdict:
    validate(desc)
    thm, conds = _route(desc)
    return _verdict(desc, thm, conds)


def explain(desc: ClassDescription) -> Report:
    """Per-condition table with the inclusion or violating word behind each entry."""
    try:
        validate(desc)
    except ClassificationError as e:
        return Report(None, (), None, str(e))
    thm, conds = _route(desc)
    return Report(thm, tuple(conds), _verdict(desc, thm, conds))

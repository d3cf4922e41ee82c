"""Quantifier-prefix languages over the alphabet {A, E}.

A :class:`PrefixLanguage` is a finite union of pattern languages ``P(w)``,
where ``w`` is a word over ``A``, ``E``, ``A*`` and ``E*`` with digit
repetition counts (``"E*A2"`` is ``E* A A``).  ``P(A^n)`` is every run of at
most ``n`` letters ``A``, ``P(A*)`` every run, and ``P`` of a concatenation is
the concatenation of the ``P`` languages.  Raw word sets (taken literally,
without that closure) are also allowed, mostly for testing closure checks.

Everything is decided on deterministic automata: membership, inclusion (with
a shortest counterexample) and closure under deleting letters.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import product

ALPHABET = ("A", "E")
_TOKEN_RE = re.compile(r"([AE])(\*|\d+)?")
_PRETTY = {"∀": "A", "∃": "E"}


class PrefixError(ValueError):
    pass


def normalize_word(w) -> str:
    """Accept 'AE', '∀∃' or a sequence of letters and return an A/E string."""
    s = "".join(w) if not isinstance(w, str) else w
    s = "".join(_PRETTY.get(c, c) for c in s)
    if any(c not in ALPHABET for c in s):
        raise PrefixError(f"not a word over {{A, E}}: {w!r}")
    return s


def parse_pattern(text: str) -> tuple[tuple[str, int | None], ...]:
    """``"E*A2"`` -> ``(("E", None), ("A", 2))``; ``None`` marks a star."""
    s = "".join(_PRETTY.get(c, c) for c in text.replace(" ", ""))
    tokens, pos = [], 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            raise PrefixError(f"bad prefix pattern {text!r} at position {pos}")
        letter, rep = m.groups()
        tokens.append((letter, None if rep == "*" else int(rep or 1)))
        pos = m.end()
    return tuple(tokens)


def format_pattern(tokens) -> str:
    out = []
    for letter, rep in tokens:
        out.append(letter + ("*" if rep is None else ("" if rep == 1 else str(rep))))
    return "".join(out)


def pretty(word: str) -> str:
    return "".join("∀" if c == "A" else "∃" for c in word) or "λ"


# -- automata -----------------------------------------------------------------

class _NFA:
    def __init__(self):
        self.trans: list[dict[str, set[int]]] = []
        self.eps: list[set[int]] = []
        self.starts: set[int] = set()
        self.accept: set[int] = set()

    def state(self) -> int:
        self.trans.append({})
        self.eps.append(set())
        return len(self.trans) - 1

    def edge(self, a: int, letter: str | None, b: int):
        if letter is None:
            self.eps[a].add(b)
        else:
            self.trans[a].setdefault(letter, set()).add(b)

    def closure(self, states) -> frozenset[int]:
        seen, todo = set(states), list(states)
        while todo:
            for t in self.eps[todo.pop()]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return frozenset(seen)


@dataclass(frozen=True)
class DFA:
    """Complete DFA over {A, E}; ``delta[q][letter]`` is the successor."""
    start: int
    accept: frozenset
    delta: tuple

    @property
    def size(self) -> int:
        return len(self.delta)

    def accepts(self, word: str) -> bool:
        q = self.start
        for c in word:
            q = self.delta[q][c]
        return q in self.accept


def _determinize(nfa: _NFA) -> DFA:
    start = nfa.closure(nfa.starts)
    index = {start: 0}
    delta, accept, todo = [], set(), [start]
    while todo:
        cur = todo.pop(0)
        row = {}
        for letter in ALPHABET:
            nxt = set()
            for q in cur:
                nxt |= nfa.trans[q].get(letter, set())
            nxt = nfa.closure(nxt)
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            row[letter] = index[nxt]
        delta.append(row)
    for subset, i in index.items():
        if subset & nfa.accept:
            accept.add(i)
    return DFA(0, frozenset(accept), tuple(delta))


def _add_pattern(nfa: _NFA, start: int, tokens) -> int:
    s = start
    for letter, rep in tokens:
        if rep is None:
            t = nfa.state()
            nfa.edge(s, None, t)
            nfa.edge(t, letter, t)
            s = t
        else:
            chain = [s] + [nfa.state() for _ in range(rep)]
            for a, b in zip(chain, chain[1:]):
                nfa.edge(a, letter, b)
            for a in chain[:-1]:
                nfa.edge(a, None, chain[-1])
            s = chain[-1]
    return s


def _add_word(nfa: _NFA, start: int, word: str) -> int:
    s = start
    for letter in word:
        t = nfa.state()
        nfa.edge(s, letter, t)
        s = t
    return s


def _deletion_dfa(d: DFA) -> DFA:
    """Automaton for the words obtained from words of ``d`` by deleting one letter."""
    nfa = _NFA()
    ids = {}
    for q in range(d.size):
        for flag in (0, 1):
            ids[q, flag] = nfa.state()
    for q in range(d.size):
        for letter in ALPHABET:
            nfa.edge(ids[q, 0], letter, ids[d.delta[q][letter], 0])
            nfa.edge(ids[q, 1], letter, ids[d.delta[q][letter], 1])
            nfa.edge(ids[q, 0], None, ids[d.delta[q][letter], 1])
        if q in d.accept:
            nfa.accept.add(ids[q, 1])
    nfa.starts.add(ids[d.start, 0])
    return _determinize(nfa)


def _difference_witness(d1: DFA, d2: DFA) -> str | None:
    """Shortest word accepted by ``d1`` and rejected by ``d2`` (product BFS)."""
    start = (d1.start, d2.start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p, q = cur = queue.popleft()
        if p in d1.accept and q not in d2.accept:
            word = []
            while parent[cur] is not None:
                cur, letter = parent[cur]
                word.append(letter)
            return "".join(reversed(word))
        for letter in ALPHABET:
            nxt = (d1.delta[p][letter], d2.delta[q][letter])
            if nxt not in parent:
                parent[nxt] = (cur, letter)
                queue.append(nxt)
    return None


# -- languages ----------------------------------------------------------------

@dataclass(frozen=True)
class PrefixLanguage:
    patterns: tuple = ()
    words: tuple = ()

    def __post_init__(self):
        pats = tuple(parse_pattern(p) if isinstance(p, str) else tuple(p) for p in self.patterns)
        object.__setattr__(self, "patterns", pats)
        object.__setattr__(self, "words", tuple(normalize_word(w) for w in self.words))
        if not pats and not self.words:
            raise PrefixError("a prefix language needs at least one generator")

    @classmethod
    def of(cls, *patterns: str) -> "PrefixLanguage":
        return cls(patterns=patterns)

    @classmethod
    def from_words(cls, *words: str) -> "PrefixLanguage":
        return cls(words=words)

    def union(self, other: "PrefixLanguage") -> "PrefixLanguage":
        return PrefixLanguage(self.patterns + other.patterns, self.words + other.words)

    __or__ = union

    @property
    def dfa(self) -> DFA:
        cached = self.__dict__.get("_dfa")
        if cached is None:
            nfa = _NFA()
            root = nfa.state()
            nfa.starts.add(root)
            for tokens in self.patterns:
                s = nfa.state()
                nfa.edge(root, None, s)
                nfa.accept.add(_add_pattern(nfa, s, tokens))
            for w in self.words:
                s = nfa.state()
                nfa.edge(root, None, s)
                nfa.accept.add(_add_word(nfa, s, w))
            cached = _determinize(nfa)
            object.__setattr__(self, "_dfa", cached)
        return cached

    def __contains__(self, word) -> bool:
        return self.dfa.accepts(normalize_word(word))

    def enumerate(self, max_len: int) -> list[str]:
        """All member words of length at most ``max_len`` (shortlex order)."""
        return [w for n in range(max_len + 1)
                for w in map("".join, product(ALPHABET, repeat=n)) if w in self]

    def __str__(self):
        parts = [f'"{format_pattern(p)}"' for p in self.patterns]
        parts += [f'(word "{w}")' for w in self.words]
        return "(prefix-lang " + " ".join(parts) + ")"


def P(*patterns: str) -> PrefixLanguage:
    return PrefixLanguage(patterns=patterns)


def prefix_member(word, lang: PrefixLanguage) -> bool:
    return normalize_word(word) in lang


def inclusion_witness(l1: PrefixLanguage, l2: PrefixLanguage) -> str | None:
    """Shortest word of ``l1`` outside ``l2``, or None when ``l1`` ⊆ ``l2``."""
    return _difference_witness(l1.dfa, l2.dfa)


def prefix_subset(l1: PrefixLanguage, l2: PrefixLanguage) -> bool:
    return inclusion_witness(l1, l2) is None


def missing_subword(lang: PrefixLanguage) -> str | None:
    """A subword of some member that is not itself a member, if any.

    Closure under deleting any set of letters follows from closure under
    deleting a single letter, so one deletion automaton suffices.
    """
    d = lang.dfa
    return _difference_witness(_deletion_dfa(d), d)


def is_subword_closed(lang: PrefixLanguage) -> bool:
    return missing_subword(lang) is None


# the named languages used by the classifier
P1 = P("E*A*")
P2 = P("E*A2E*")
P3 = P("E*A2")
P_EXISTS = P("E*")
P_EAE = P("E*AE*")

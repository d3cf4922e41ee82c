import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import expand_pattern
from ctree import gen
from ctree.prefix import (P, P1, P2, P3, P_EAE, P_EXISTS, PrefixError, PrefixLanguage,
                          inclusion_witness, is_subword_closed, missing_subword, parse_pattern,
                          prefix_member, prefix_subset)


def words(max_len):
    return ["".join(w) for n in range(max_len + 1) for w in product("AE", repeat=n)]


def test_forall_two_expands_to_three_words():
    assert set(P("A2").enumerate(6)) == {"", "A", "AA"}


@pytest.mark.parametrize("word,lang,expected", [
    ("", P("A2"), True),
    ("AAA", P("A2"), False),
    ("EAEE", P("E*AE*"), True),
    ("∃∀∃∃", P("E*AE*"), True),
    ("AEA", P("E*AE*"), False),
])
def test_membership(word, lang, expected):
    assert prefix_member(word, lang) is expected


def test_parse_pattern():
    assert parse_pattern("E*A2") == (("E", None), ("A", 2))
    assert parse_pattern("∃*∀") == (("E", None), ("A", 1))
    with pytest.raises(PrefixError):
        parse_pattern("AX")
    with pytest.raises(PrefixError):
        PrefixLanguage()


def test_subset_examples():
    assert prefix_subset(P("E*A2"), P1)
    assert not prefix_subset(P("AE"), P1)
    assert inclusion_witness(P("AE"), P1) == "AE"
    assert prefix_subset(P2, P2)


def test_named_languages_relations():
    # P3 is the intersection of P1 and P2 over bounded words
    for w in words(6):
        assert (w in P3) == (w in P1 and w in P2)
    assert prefix_subset(P_EXISTS, P_EAE)


def test_subword_closure_examples():
    assert is_subword_closed(P("E*A2"))
    raw = PrefixLanguage.from_words("AE")
    assert not is_subword_closed(raw)
    assert missing_subword(raw) == "A"
    assert is_subword_closed(P("A*") | P("E*"))


@given(st.integers(0, 100_000))
def test_membership_matches_set_expansion(seed):
    pat = gen.pattern(random.Random(seed))
    expected = expand_pattern(pat, 6)
    assert set(P(pat).enumerate(6)) == expected


@given(st.integers(0, 100_000))
def test_subset_matches_bounded_enumeration(seed):
    rng = random.Random(seed)
    l1, l2 = gen.prefix_language(rng), gen.prefix_language(rng)
    # beyond the product of state counts a counterexample would repeat a state pair
    bound = l1.dfa.size * l2.dfa.size
    brute = all(w in l2 for w in words(min(bound, 10)) if w in l1)
    assert prefix_subset(l1, l2) == brute
    w = inclusion_witness(l1, l2)
    if w is not None:
        assert w in l1 and w not in l2


@given(st.integers(0, 100_000))
def test_pattern_languages_are_subword_closed(seed):
    lang = gen.prefix_language(random.Random(seed))
    assert is_subword_closed(lang)


@given(st.integers(0, 100_000))
def test_closure_check_matches_enumeration(seed):
    lang = gen.prefix_language(random.Random(seed), raw_words=True)
    members = set(lang.enumerate(6))
    brute = all(w[:i] + w[i + 1:] in members for w in members for i in range(len(w)))
    assert is_subword_closed(lang) == brute

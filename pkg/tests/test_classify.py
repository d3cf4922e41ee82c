import json
from pathlib import Path

import pytest

from ctree.classify import (ClassDescription, ClassificationError, Decidable, ReductionClass,
                            Unknown, classify, explain)
from ctree.io import read_class_description
from ctree.prefix import P, PrefixLanguage

CASES = json.loads((Path(__file__).parent / "fixtures" / "classify_cases.json").read_text())
KINDS = {"decidable": Decidable, "reduction": ReductionClass, "unknown": Unknown}


def check_case(case):
    v = classify(read_class_description(case["class"]))
    assert isinstance(v, KINDS[case["verdict"]]), f"{case['name']}: got {v}"
    if "theorem" in case:
        assert v.theorem == case["theorem"]
    if "condition" in case:
        assert v.condition == case["condition"]
    if "evidence" in case:
        assert case["evidence"] in v.evidence
    return v


def test_fixture_covers_every_condition():
    conds = {c.get("condition") for c in CASES}
    assert {"d.1", "d.2", "d.3", "d.4", "c.1", "c.2", "c.3", "b.1", "b.2", "b.3"} <= conds
    for thm in ("Thm5.2", "Thm5.3", "Thm5.4"):
        assert sum(c["verdict"] == "reduction" and c["theorem"] == thm for c in CASES) >= 2
    assert any(c["verdict"] == "unknown" for c in CASES)


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_fixture_case(case):
    check_case(case)


def test_verdict_strings():
    d1 = ClassDescription({1: 3}, prefix_sets=(P("E*A*"),))
    assert str(classify(d1)) == "DECIDABLE via Thm5.2(d.1)"
    red = ClassDescription({2: 1}, {2: 1}, prefix_sets=(P("A2"),))
    assert str(classify(red)).startswith("REDUCTION-CLASS via Thm5.3: ")


def test_threshold_follows_r0():
    pis = (P("AEA"),)
    assert isinstance(classify(ClassDescription({2: 3}, prefix_sets=pis, r0=2)), ReductionClass)
    assert isinstance(classify(ClassDescription({2: 2}, prefix_sets=pis, r0=2)), Unknown)
    assert isinstance(classify(ClassDescription({2: 2}, infinite=True, prefix_sets=pis, r0=2)),
                      ReductionClass)


def test_explain_table_d2():
    rep = explain(ClassDescription({2: 1}, infinite=True, prefix_sets=(P("E*A*"),)))
    table = {c.tag: c for c in rep.conditions}
    assert table["d.2"].holds and not table["d.1"].holds
    assert "every Pi_i is within P1" in table["d.2"].detail
    assert rep.verdict == Decidable("d.2", "Thm5.2")


def test_explain_reports_violating_word():
    rep = explain(ClassDescription({2: 1}, {2: 1}, prefix_sets=(P("A2"),)))
    c3 = next(c for c in rep.conditions if c.tag == "c.3")
    assert not c3.holds and "∀∀" in c3.detail


def test_validation_errors_come_first():
    raw = PrefixLanguage.from_words("AE")
    desc = ClassDescription({2: 1}, prefix_sets=(raw,))
    with pytest.raises(ClassificationError, match="subwords"):
        classify(desc)
    rep = explain(desc)
    assert rep.error and not rep.conditions and "invalid" in rep.lines()[0]
    with pytest.raises(ClassificationError):
        classify(ClassDescription({0: 1}, prefix_sets=(P("A"),)))
    with pytest.raises(ClassificationError):
        classify(ClassDescription({1: -1}, prefix_sets=(P("A"),)))

import os
import sys
from itertools import product

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ctree.logic import Signature  # noqa: E402
from ctree.semantics import Bounded, enumerate_structures, model_check  # noqa: E402

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def sig_rf():
    return Signature.of({"r": 1}, {"f": 1})


@pytest.fixture(scope="session")
def sig_r():
    return Signature.of({"r": 1})


def all_structures(sig, n):
    return list(enumerate_structures(sig, Bounded(n)))


def equivalent_everywhere(sig, f, g, max_size=2, nvars=0):
    """True when f and g get the same truth value on every structure of
    size <= max_size and every assignment of x0..x_{nvars-1}."""
    for U in all_structures(sig, max_size):
        for a in product(range(U.size), repeat=nvars):
            env = dict(enumerate(a))
            if model_check(U, f, env) != model_check(U, g, env):
                return False
    return True


def expand_pattern(pattern, max_len):
    """Words of P(w) up to max_len, straight from the set definitions."""
    import re
    out = {""}
    for letter, rep in re.findall(r"([AE])(\*|\d*)", pattern):
        if rep == "*":
            block = {letter * i for i in range(max_len + 1)}
        else:
            block = {letter * i for i in range(int(rep or 1) + 1)}
        out = {u + v for u in out for v in block if len(u + v) <= max_len}
    return out


def cheaper_solvers(s, sig, m, spec, psi, var_cap=8):
    """Trees of complexity below ``psi`` (from the plain enumerator) that
    solve ``s``; empty when ``psi`` is optimal."""
    from ctree.optimize import enumerate_trees, psi_scheme
    from ctree.solvability import solves_relative
    if psi == 0:
        return []
    structures = all_structures(sig, spec.max_size)
    out = []
    for t in enumerate_trees(sig, m, psi - 1, s.n, s.values(), var_cap):
        if psi_scheme(m, t) < psi and solves_relative(t, s, sig, spec,
                                                      structures=structures).solves:
            out.append(t)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])

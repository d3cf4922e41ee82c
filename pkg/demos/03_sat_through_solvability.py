"""
Satisfiability answered by solvability
======================================

An existential sentence is satisfiable in a class exactly when one of the
trees built from its DNF conjuncts fails to compute the constant-0 function
there.  We compare that route with a direct search for a model.
"""

import random

from ctree import gen, io
from ctree.logic import Signature, format_formula
from ctree.satisfiability import sat_conjunction
from ctree.semantics import Bounded
from ctree.solvability import sat_via_solvability

sig = Signature.of({"r": 1}, {"f": 1}, equality=True)
alpha = io.read_formula("(forall x0 (imp (r x0) (r (f x0))))")

rng = random.Random(5)
for _ in range(8):
    beta = gen.existential(rng, sig, max_quantifiers=2, max_literals=3)
    via_trees = sat_via_solvability(alpha, beta, sig, Bounded(2))
    direct = sat_conjunction([alpha, beta], sig, Bounded(2))
    print("SAT  " if via_trees.sat else "UNSAT", direct.sat == via_trees.sat, format_formula(beta))

"""
Cheapest tree for a problem
===========================

Weights on symbols give every path a cost; a tree costs as much as its most
expensive path.  The optimizer tries budgets 0, 1, 2, ... and returns the first
tree that solves the problem on the class.  The tree that simply evaluates
every atom of the problem is always a solver, so the search is bounded.
"""

from ctree import io
from ctree.optimize import ComplexityMeasure, optimize, psi_problem, sat_via_optimizer
from ctree.semantics import Bounded

sig = io.read_signature("(signature (pred r 1) (fn f 1))")

# r(x0) xor r(f(f(x0)))
problem = io.read_problem("""
(problem (n 1)
  (exprs (r x0) (x1 <= f x0) (x1 <= f x1) (r x1))
  (nu (00 0) (01 1) (10 1) (11 0)))
""")

for weights in ({}, {"f": 2}):
    m = ComplexityMeasure.for_signature(sig, weights)
    res = optimize(problem, sig, Bounded(2), m=m)
    print("weights", m.as_dict(), "bound", psi_problem(m, problem), "optimum", res.psi)
    print("  ", io.format_tree(res.tree))
    print("   search nodes per budget:", res.certificate)

# the same machinery decides satisfiability of existential sentences
gamma = io.read_formula("(exists x0 (and (r x0) (not (r (f x0)))))")
for alpha_text in ("(forall x0 (or (r x0) (not (r x0))))", "(forall x0 (imp (r x0) (r (f x0))))"):
    v = sat_via_optimizer(io.read_formula(alpha_text), gamma, sig, Bounded(2))
    print(alpha_text, "->", "SAT" if v.sat else f"UNSAT up to {v.bound}")

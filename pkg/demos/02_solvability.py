"""
Does a tree solve a problem?
============================

A problem scheme names a function through a table over the truth values of
some atoms.  Whether a tree computes it on every structure of a class can be
checked two ways: run both on every structure, or ask one satisfiability
question per (path, table row) pair that disagree.  The two must agree.
"""

from ctree import io
from ctree.semantics import Bounded
from ctree.solvability import solves_relative

sig = io.read_signature("(signature (pred r 1) (fn f 1))")

# "is r true at f(x0)?"
problem = io.read_problem("(problem (n 1) (exprs (x1 <= f x0) (r x1)) (nu (0 0) (1 1)))")

candidates = {
    "always 0": "(tree (n 1) (root n0) (node n0 term 0))",
    "test r(x0)": "(tree (n 1) (root n0) (node n0 pred (r x0) (0 n1) (1 n2))"
                  " (node n1 term 0) (node n2 term 1))",
    "test r(f(x0))": "(tree (n 1) (root n0) (node n0 fn (x1 <= f x0) (next n1))"
                     " (node n1 pred (r x1) (0 n2) (1 n3)) (node n2 term 0) (node n3 term 1))",
}

for name, text in candidates.items():
    tree = io.read_tree(text)
    brute = solves_relative(tree, problem, sig, Bounded(2), method="brute")
    red = solves_relative(tree, problem, sig, Bounded(2), method="reduction")
    print(f"{name:14s} brute={brute.solves!s:5} reduction={red.solves}")

# a constraint on the class can make a cheaper tree correct:
# if f preserves r, testing r(x0) is enough
alpha = io.read_formula("(forall x0 (and (imp (r x0) (r (f x0))) (imp (r (f x0)) (r x0))))")
tree = io.read_tree(candidates["test r(x0)"])
print("under alpha:", solves_relative(tree, problem, sig, Bounded(2), alpha).solves)

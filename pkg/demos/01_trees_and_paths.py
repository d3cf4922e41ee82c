"""
Computation trees, complete paths and evaluation
================================================

A tree scheme tests atoms on registers and rewrites registers with function
symbols.  Every root-to-leaf path carries a set of atomic formulas over the
inputs; on any structure and input exactly one path has all of them true.
"""

from ctree import io
from ctree.schemes import path_enumerate
from ctree.semantics import evaluate_tree

sig = io.read_signature("(signature (pred r 1) (fn f 1))")

# root tests r(x0); on "no" we replace x0 by f(x0) and test again
tree = io.read_tree("""
(tree (n 1) (root n0)
  (node n0 pred (r x0) (0 n1) (1 n4))
  (node n1 fn (x0 <= f x0) (next n2))
  (node n2 pred (r x0) (0 n3) (1 n5))
  (node n3 term 3)
  (node n4 term 1)
  (node n5 term 2))
""")

for p in path_enumerate(tree, sig):
    print("terminal", p.label, ":", " & ".join(io.format_formula(f) for f in p.formulas))

# universe {0,1}, r holds on 1, f swaps
U = io.read_structure("(structure (size 2) (pred r (0 1)) (fn f (1 0)))", sig)
for a in (0, 1):
    ev = evaluate_tree(tree, U, (a,))
    print(f"input {a} -> label {ev.label} via", " ".join(f"n{i}" for i in ev.path.nodes))

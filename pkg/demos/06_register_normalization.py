"""
Keeping register indices small
==============================

Any tree can be rewritten so that it only touches the inputs plus one fresh
register per function node; registers that are read but never written are
folded onto a register that still holds the last input.
"""

from itertools import product

from ctree import io
from ctree.logic import Signature
from ctree.schemes import depth, normalize_variables
from ctree.semantics import Bounded, enumerate_structures, run_tree

sig = Signature.of({"r": 1}, {"f": 1})

# x0 is overwritten, x7 is never written (so it still holds the input),
# x12 is a scratch register
tree = io.read_tree("""
(tree (n 1) (root n0)
  (node n0 fn (x12 <= f x0) (next n1))
  (node n1 fn (x0 <= f x12) (next n2))
  (node n2 pred (r x7) (0 n3) (1 n4))
  (node n3 term 0)
  (node n4 pred (r x0) (0 n5) (1 n6))
  (node n5 term 1)
  (node n6 term 2))
""")
small = normalize_variables(tree)
print(io.format_tree(tree))
print(io.format_tree(small))
print("registers before", sorted(tree.variables()), "after", sorted(small.variables()),
      "limit", 1 + 2 ** depth(tree))

same = all(run_tree(tree, U, a) == run_tree(small, U, a)
           for U in enumerate_structures(sig, Bounded(2))
           for a in product(range(U.size), repeat=1))
print("same function on every structure of size <= 2:", same)

"""
Which prefix classes are decidable?
===================================

A class is given by a signature summary and a few quantifier-prefix
languages closed under subwords.  The classifier reports the decidability
condition that applies, or the shape that makes the class a reduction class.
"""

from ctree.classify import ClassDescription, explain
from ctree.prefix import P, inclusion_witness, is_subword_closed

print(sorted(P("A2").enumerate(5)))                       # ['', 'A', 'AA']
print(inclusion_witness(P("AE"), P("E*A*")))              # AE is not E..EA..A
print(is_subword_closed(P("A*") | P("E*")))

descriptions = {
    "one binary predicate, E*A*": ClassDescription({2: 1}, infinite=True, prefix_sets=(P("E*A*"),)),
    "binary function, two universals": ClassDescription({2: 1}, {2: 1}, prefix_sets=(P("A2"),)),
    "two unary functions with equality": ClassDescription(fns={1: 2}, equality=True,
                                                          prefix_sets=(P("A"),)),
    "few predicates": ClassDescription({2: 3}, prefix_sets=(P("AEA"),)),
}
for name, desc in descriptions.items():
    print()
    print(name)
    print(explain(desc))

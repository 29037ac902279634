"""
Consecutive orderings with PQ-trees
===================================

Eight elements, three sets that must stay consecutive, and the tree that
describes every ordering respecting them.  Then the tree is reordered so
that a given partial order is respected.
"""

from intervalext.errors import Incompatible
from intervalext.pq_tree import build_pq_tree, enumerate_orderings
from intervalext.reorder import DigraphOrder, reorder_general

elements = list("abcdefgh")
sets = [set("abc"), set("de"), set("efg")]
tree = build_pq_tree(elements, sets)
print("tree:", tree.to_bracket())

orderings = {"".join(o) for o in enumerate_orderings(tree)}
print(len(orderings), "orderings keep every set consecutive")
for word in ("abcdefgh", "fgedhacb", "acdefgbh", "defhgabc"):
    print(f"  {word}: {'yes' if word in orderings else 'no'}")

# ask for h before a and g before d; the Q-node over d e f g gets flipped
wanted = DigraphOrder(elements, [("h", "a"), ("g", "d")])
print("reordered:", "".join(reorder_general(tree, wanted).frontier()))

# h cannot sit between a and b while a b c stay together
try:
    reorder_general(tree, DigraphOrder(elements, [("a", "h"), ("h", "b")]))
except Incompatible as exc:
    print("a<h<b:", exc)

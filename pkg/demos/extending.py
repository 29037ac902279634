"""
Extending pre-drawn intervals
=============================

Two stars whose centres are already drawn, a small instance that cannot be
extended, and plain recognition.
"""

from fractions import Fraction

from intervalext.errors import NotExtendible, NotInterval
from intervalext.graph_core import Graph, check_extension
from intervalext.repext import dump_representation, extend, extend_detailed, recognize

# centres 0 and 1, leaves 2..4 on the first star and 5..7 on the second
stars = Graph(8, [(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])
predrawn = {0: (0, 1), 1: (2, 3)}
ext = extend_detailed(stars, predrawn)
print("clique order:", [ext.cliques[a] for a in ext.clique_order])
print(dump_representation(ext.representation), end="")
print("verified:", check_extension(stars, predrawn, ext.representation) is None)

# v must reach from u to w and would swallow z, which it does not touch
blocker = Graph(4, [(0, 1), (1, 2)])
try:
    extend(blocker, {0: (0, 1), 2: (3, 4), 3: (Fraction(3, 2), Fraction(5, 2))})
except NotExtendible as exc:
    print("blocker:", exc)

# without anything pre-drawn this is just recognition
path = Graph(5, [(i, i + 1) for i in range(4)])
print(dump_representation(recognize(path)), end="")
try:
    recognize(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
except NotInterval as exc:
    print("C4:", exc)

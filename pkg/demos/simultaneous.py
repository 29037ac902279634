"""
Simultaneous representations
============================

Graphs that share some vertices get representations that draw the shared
vertices identically.
"""

from intervalext.errors import NoSimRep
from intervalext.graph_core import Graph
from intervalext.repext import dump_representation
from intervalext.simrep import SimRepInstance, simrep

triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
path = Graph(3, [(0, 1), (1, 2)])
inst = SimRepInstance([triangle, path], [{"a": 0, "b": 1}, {"a": 0, "b": 1}])
for i, rep in enumerate(simrep(inst)):
    print(f"graph {i}")
    print(dump_representation(rep), end="")


# x and y hang off `outer` on both sides, forcing the other shared vertex
# strictly inside it
def nested(outer):
    return Graph(6, [(0, 1), (outer, 2), (outer, 3), (2, 4), (3, 5)])


inst = SimRepInstance([nested(1), nested(0)], [{"a": 0, "b": 1}] * 2)
try:
    simrep(inst)
except NoSimRep as exc:
    print("a inside b and b inside a:", exc)

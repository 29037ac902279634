"""Simultaneous representations of graphs sharing a vertex set.

Graphs ``G_1..G_k`` share the vertices ``I`` (with identical induced edges)
and are otherwise disjoint.  They have representations agreeing on ``I``
exactly when some placement of the shared intervals extends in every
graph.  Extendibility only depends on the left-to-right order of the shared
endpoints, so it suffices to try every weak order of those ``2l`` endpoints
that realises ``G[I]``, realised with coordinate ``j`` for the ``j``-th tie
class, and run the extension algorithm on each graph.

Weak orders rather than strict ones are enumerated because closed intervals
may touch or be single points.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence

from .errors import (
    BoundExceeded,
    InvalidInstance,
    MalformedLine,
    NoSimRep,
    NotExtendible,
    NotInterval,
)
from .graph_core import Graph, _content_lines, dump_graph, load_graph
from .repext import PartialRepresentation, extend

__all__ = [
    "SimRepInstance",
    "load_simrep",
    "dump_simrep",
    "endpoint_configurations",
    "simrep",
    "DEFAULT_MAX_SHARED",
]

DEFAULT_MAX_SHARED = 5


class SimRepInstance:
    """Graphs plus, per graph, a map from shared vertex names to local ids."""

    def __init__(self, graphs: Sequence[Graph], maps: Sequence[Mapping[str, int]]):
        graphs = list(graphs)
        maps = [dict(m) for m in maps]
        if len(graphs) != len(maps):
            raise InvalidInstance("need one shared-vertex map per graph")
        names = tuple(maps[0]) if maps else ()
        for i, (G, m) in enumerate(zip(graphs, maps)):
            if set(m) != set(names):
                raise InvalidInstance(f"graph {i} does not map exactly the shared vertices")
            ids = list(m.values())
            if len(set(ids)) != len(ids):
                raise InvalidInstance(f"graph {i} maps two shared names to one vertex")
            for name, v in m.items():
                if not (isinstance(v, int) and 0 <= v < G.n):
                    raise InvalidInstance(f"graph {i}: shared vertex {name} -> {v} out of range")
        if graphs:
            ref = _shared_edges(graphs[0], maps[0], names)
            for i in range(1, len(graphs)):
                if _shared_edges(graphs[i], maps[i], names) != ref:
                    raise InvalidInstance(
                        f"graphs 0 and {i} induce different edges on the shared vertices"
                    )
        self.graphs = graphs
        self.maps = maps
        self.shared = names

    @property
    def k(self) -> int:
        return len(self.graphs)

    def shared_adjacency(self) -> dict[str, set[str]]:
        if not self.graphs:
            return {}
        G, m = self.graphs[0], self.maps[0]
        return {a: {b for b in self.shared if b != a and G.has_edge(m[a], m[b])} for a in self.shared}


def _shared_edges(G: Graph, m: Mapping[str, int], names) -> set[frozenset]:
    out = set()
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if G.has_edge(m[a], m[b]):
                out.add(frozenset((a, b)))
    return out


def load_simrep(text) -> SimRepInstance:
    """Parse an instance file.

    ::

        k 2
        shared a b
        graph a=0 b=1
        3 3
        0 1
        ...
        graph a=0 b=2
        ...

    Each ``graph`` header is followed by a graph in the plain ``n m`` format.
    """
    if isinstance(text, bytes):
        text = text.decode()
    raw = text.splitlines()
    content = list(_content_lines(text))
    if len(content) < 2:
        raise MalformedLine("expected 'k <count>' and 'shared ...' lines")
    lineno, line = content[0]
    fields = line.split()
    if len(fields) != 2 or fields[0] != "k" or not fields[1].isdigit():
        raise MalformedLine(f"expected 'k <count>', got {line!r}", lineno)
    k = int(fields[1])
    lineno, line = content[1]
    fields = line.split()
    if not fields or fields[0] != "shared":
        raise MalformedLine(f"expected 'shared <names>', got {line!r}", lineno)
    names = fields[1:]
    if len(set(names)) != len(names):
        raise MalformedLine("shared names must be distinct", lineno)
    headers = [(ln, ln_text) for ln, ln_text in content[2:] if ln_text.split()[0] == "graph"]
    if len(headers) != k:
        raise MalformedLine(f"announced {k} graphs, found {len(headers)}", content[0][0])
    graphs, maps = [], []
    for idx, (ln, header) in enumerate(headers):
        m = {}
        for tok in header.split()[1:]:
            name, sep, vid = tok.partition("=")
            if not sep or not vid.lstrip("-").isdigit():
                raise MalformedLine(f"expected 'name=id', got {tok!r}", ln)
            if name in m:
                raise MalformedLine(f"shared name {name} mapped twice", ln)
            m[name] = int(vid)
        if set(m) != set(names):
            raise MalformedLine("graph header must map exactly the shared names", ln)
        end = headers[idx + 1][0] - 1 if idx + 1 < len(headers) else len(raw)
        block = "\n".join(raw[ln:end])
        graphs.append(load_graph(block, first_line=ln + 1))
        maps.append({a: m[a] for a in names})
    return SimRepInstance(graphs, maps)


def dump_simrep(inst: SimRepInstance) -> str:
    out = [f"k {inst.k}", " ".join(["shared", *inst.shared])]
    for G, m in zip(inst.graphs, inst.maps):
        out.append(" ".join(["graph", *(f"{a}={m[a]}" for a in inst.shared)]))
        out.append(dump_graph(G).rstrip("\n"))
    return "\n".join(out) + "\n"


def endpoint_configurations(names: Sequence[str], adjacency: Mapping[str, set]) -> Iterator[dict]:
    """Every weak order of the shared endpoints realising the shared graph.

    Yields ``name -> (left, right)`` with ``left`` and ``right`` the indices
    of the tie classes.  Classes are built left to right; within a class
    all starts come before all ends, so the intervals of a class meet.
    Starts and ends that would contradict the graph are pruned on the spot.
    """
    names = list(names)
    ell = len(names)
    if ell == 0:
        yield {}
        return
    nbr = [0] * ell
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if b in adjacency[a]:
                nbr[i] |= 1 << j
    full = (1 << ell) - 1
    left = [0] * ell
    right = [0] * ell

    def starts(started, ended, pos, chosen):
        # choose starters with increasing index to avoid duplicates
        yield chosen
        for v in range(pos, ell):
            bit = 1 << v
            if started & bit:
                continue
            opened = started & ~ended
            if opened & ~nbr[v] or ended & nbr[v]:
                continue
            yield from starts(started | bit, ended, v + 1, chosen | bit)

    def ends(started, ended, pos, chosen):
        yield chosen
        for v in range(pos, ell):
            bit = 1 << v
            if started & bit and not ended & bit and not nbr[v] & ~started:
                yield from ends(started, ended | bit, v + 1, chosen | bit)

    def grow(started, ended, group):
        if ended == full:
            yield {names[i]: (left[i], right[i]) for i in range(ell)}
            return
        for s in starts(started, ended, 0, 0):
            st = started | s
            for e in ends(st, ended, 0, 0):
                if not s and not e:
                    continue
                for v in range(ell):
                    if s >> v & 1:
                        left[v] = group
                    if e >> v & 1:
                        right[v] = group
                yield from grow(st, ended | e, group + 1)

    yield from grow(0, 0, 0)


def simrep(inst: SimRepInstance, max_shared: int = DEFAULT_MAX_SHARED) -> list[dict]:
    """Representations of all graphs that agree on the shared vertices.

    Raises :class:`BoundExceeded` when more than ``max_shared`` vertices are
    shared and :class:`NoSimRep` when no simultaneous representation
    exists.  Configurations are tried in a fixed order and the first one
    that extends in every graph wins.
    """
    if len(inst.shared) > max_shared:
        raise BoundExceeded(f"{len(inst.shared)} shared vertices exceed the bound {max_shared}")
    for i, G in enumerate(inst.graphs):
        try:
            extend(G, None)
        except NotInterval as exc:
            raise NoSimRep(f"graph {i} is not an interval graph") from exc
    for conf in endpoint_configurations(inst.shared, inst.shared_adjacency()):
        reps = []
        for G, m in zip(inst.graphs, inst.maps):
            partial = PartialRepresentation(G, {m[a]: conf[a] for a in inst.shared})
            try:
                reps.append(extend(G, partial))
            except NotExtendible:
                break
        else:
            return reps
    raise NoSimRep("no placement of the shared vertices extends in every graph")

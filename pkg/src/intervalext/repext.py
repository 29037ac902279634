"""Extending a partial interval representation.

Pipeline:

1. maximal cliques of ``G`` and a PQ-tree of their consecutive orderings
   (one restricting set per vertex: the cliques containing it);
2. a left-to-right sweep over the pre-drawn intervals finding, for each
   clique ``a``, where its clique-point may go: the points covered by
   exactly the pre-drawn members ``P(a)`` of ``a``.  The infimum and
   supremum of that set give an open interval per clique, and these
   intervals define an interval order on the cliques;
3. reordering the PQ-tree to respect that order;
4. greedy left-most placement of the clique-points in frontier order;
5. every free vertex spans the clique-points of its cliques.

Pre-drawn endpoints cut the line into *regions*: with sorted distinct
coordinates ``x_0 < ... < x_{q-1}``, region ``2j`` is the open part left of
``x_j`` (region ``2q`` is the part right of ``x_{q-1}``) and region
``2j + 1`` is the point ``x_j`` itself.  Everything before placement works
on region and boundary indices; rationals are only touched when
clique-points get coordinates.
"""

from __future__ import annotations

import functools
import gc
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .chordal import CliqueList, maximal_cliques
from .errors import (
    Incompatible,
    Infeasible,
    InvalidPartial,
    MalformedLine,
    NotChordal,
    NotExtendible,
    NotInterval,
    Unplaceable,
    VertexOutOfRange,
)
from .graph_core import (
    ClosedInterval,
    Graph,
    _content_lines,
    as_integers,
    check_extension,
    exact_argsort,
    parse_rational,
)
from .pq_tree import PQTree
from .reorder import SortedEndpointSequence, reorder_interval

__all__ = [
    "PartialRepresentation",
    "CliqueConstraints",
    "Extension",
    "load_partial",
    "dump_representation",
    "sweep_constraints",
    "build_clique_order",
    "place_clique_points",
    "build_intervals",
    "extend",
    "extend_detailed",
    "recognize",
]

NEG_INF = float("-inf")
POS_INF = float("inf")


class PartialRepresentation:
    """Validated pre-drawn intervals of some vertices of a graph.

    ``boundaries`` holds the distinct endpoint coordinates in increasing
    order; ``left_index[v]`` / ``right_index[v]`` locate the endpoints of a
    pre-drawn ``v`` in it.
    """

    __slots__ = ("predrawn", "boundaries", "left_index", "right_index")

    def __init__(self, G: Graph, predrawn: Mapping | None = None):
        predrawn = dict(predrawn or {})
        for v, iv in list(predrawn.items()):
            if not (isinstance(v, int) and 0 <= v < G.n):
                raise VertexOutOfRange(f"pre-drawn vertex {v!r} out of range 0..{G.n - 1}")
            if not isinstance(iv, ClosedInterval):
                try:
                    predrawn[v] = ClosedInterval(*iv)
                except ValueError as exc:
                    raise InvalidPartial(f"vertex {v}: {exc}") from None
        verts = list(predrawn)
        ivals = [predrawn[v] for v in verts]
        _validate(G, verts, ivals)

        keys = [(iv.left,) for iv in ivals] + [(iv.right,) for iv in ivals]
        order = exact_argsort(keys)
        k = len(verts)
        boundaries: list[Fraction] = []
        left_index: dict[int, int] = {}
        right_index: dict[int, int] = {}
        for idx in order:
            x = keys[idx][0]
            if not boundaries or boundaries[-1] != x:
                boundaries.append(x)
            j = len(boundaries) - 1
            if idx < k:
                left_index[verts[idx]] = j
            else:
                right_index[verts[idx - k]] = j
        self.predrawn = predrawn
        self.boundaries = boundaries
        self.left_index = left_index
        self.right_index = right_index

    def __len__(self):
        return len(self.predrawn)

    def __contains__(self, v):
        return v in self.predrawn

    @property
    def sorted_events(self) -> list[tuple[int, str, Fraction]]:
        """``(vertex, side, coordinate)`` left to right, right endpoints first on ties."""
        out = []
        for v, j in self.left_index.items():
            out.append((j, 1, v, "L"))
        for v, j in self.right_index.items():
            out.append((j, 0, v, "R"))
        out.sort()
        return [(v, side, self.boundaries[j]) for j, _, v, side in out]

    def parts(self) -> list[tuple[object, object, frozenset]]:
        """Open parts as ``(lo, hi, cover)``, with infinite ends as floats."""
        b = self.boundaries
        edges = [NEG_INF, *b, POS_INF]
        out = []
        for j in range(len(edges) - 1):
            lo, hi = edges[j], edges[j + 1]
            cover = frozenset(
                v for v, iv in self.predrawn.items() if iv.left <= lo and hi <= iv.right
            )
            out.append((lo, hi, cover))
        return out


def _validate(G: Graph, verts: list[int], ivals: list[ClosedInterval]) -> None:
    """Pre-drawn intervals must represent the subgraph they induce.

    One sweep with left endpoints before right endpoints on ties.  Each
    opening interval is compared with the open ones; the sweep stops at the
    first non-adjacent pair, so the work is bounded by the induced edges.
    """
    if not verts:
        return
    keys = []
    for i, iv in enumerate(ivals):
        keys.append((iv.left, 0, i))
        keys.append((iv.right, 1, i))
    active: dict[int, None] = {}
    seen = 0
    for idx in exact_argsort(keys):
        _, side, i = keys[idx]
        if side:
            del active[i]
            continue
        u = verts[i]
        for j in active:
            v = verts[j]
            if not G.has_edge(u, v):
                a, b = min(u, v), max(u, v)
                raise InvalidPartial(
                    f"pre-drawn intervals of non-adjacent {a} and {b} intersect", (a, b)
                )
        seen += len(active)
        active[i] = None
    index = {v: i for i, v in enumerate(verts)}
    induced = sum(1 for v in verts for w in G.adj[v] if w in index and v < w)
    if seen == induced:
        return
    for v in sorted(verts):
        for w in G.adj[v]:
            if w in index and v < w and not ivals[index[v]].intersects(ivals[index[w]]):
                raise InvalidPartial(
                    f"pre-drawn intervals of adjacent {v} and {w} are disjoint", (v, w)
                )
    raise AssertionError("edge count mismatch without a witness")


def load_partial(G: Graph, text, assume_sorted: bool = False) -> PartialRepresentation:
    """Parse ``v L R`` lines into a validated partial representation.

    With ``assume_sorted`` the lines must already be listed by non-decreasing
    left endpoint; this is checked in one pass and a violation raises
    :class:`MalformedLine`.
    """
    predrawn: dict[int, ClosedInterval] = {}
    prev_left = None
    for lineno, line in _content_lines(text):
        fields = line.split()
        if len(fields) != 3:
            raise MalformedLine(f"expected 'v L R', got {line!r}", lineno)
        try:
            v = int(fields[0])
        except ValueError:
            raise MalformedLine(f"non-integer vertex id in {line!r}", lineno) from None
        if not 0 <= v < G.n:
            raise VertexOutOfRange(f"vertex id {v} out of range 0..{G.n - 1}", lineno)
        if v in predrawn:
            raise MalformedLine(f"vertex {v} is pre-drawn twice", lineno)
        left = parse_rational(fields[1], lineno)
        right = parse_rational(fields[2], lineno)
        if left > right:
            raise InvalidPartial(f"line {lineno}: interval of {v} has left > right")
        if assume_sorted:
            if prev_left is not None and left < prev_left:
                raise MalformedLine("input is not sorted by left endpoint", lineno)
            prev_left = left
        predrawn[v] = ClosedInterval(left, right)
    return PartialRepresentation(G, predrawn)


def dump_representation(rep: Mapping[int, ClosedInterval]) -> str:
    from .graph_core import format_rational

    return "".join(
        f"{v} {format_rational(rep[v].left)} {format_rational(rep[v].right)}\n" for v in sorted(rep)
    )


# ----------------------------------------------------------------------
# sweep


@dataclass
class CliqueConstraints:
    """Where each clique-point may be placed.

    Cliques with the same pre-drawn members share a representative
    (``rep``) and its list of admissible ``regions``.  ``lo_key`` and
    ``hi_key`` are the infimum and supremum of those regions as boundary
    indices shifted by one: ``0`` is minus infinity, ``j + 1`` is ``x_j`` and
    ``q + 1`` is plus infinity.
    """

    boundaries: list
    psize: list
    rep: list
    regions: dict
    lo_key: list
    hi_key: list

    def _coord(self, key):
        if key == 0:
            return NEG_INF
        if key == len(self.boundaries) + 1:
            return POS_INF
        return self.boundaries[key - 1]

    def lo(self, a: int):
        """Infimum of the admissible positions of clique ``a``."""
        return self._coord(self.lo_key[a])

    def hi(self, a: int):
        """Supremum of the admissible positions of clique ``a``."""
        return self._coord(self.hi_key[a])

    def feasible_regions(self, a: int) -> list[int]:
        return self.regions[self.rep[a]]


def _region_bounds(region: int) -> tuple[int, int]:
    """Shifted boundary keys of the infimum and supremum of a region."""
    j, point = divmod(region, 2)
    if point:
        return j + 1, j + 1
    return j, j + 1


def sweep_constraints(G: Graph, cliques: CliqueList, partial: PartialRepresentation) -> CliqueConstraints:
    """Admissible regions of every clique-point, or raise :class:`Unplaceable`.

    Sweeping left to right, a counter ``i`` tracks how many pre-drawn
    intervals cover the current position.  A clique becomes *watched* once
    all of its pre-drawn members have started and is dropped for good once
    one of them ends.  A watched clique with ``|P(a)| = i`` sees exactly its
    own members, so the current region is admissible for it.  At a shared
    coordinate left endpoints are processed first, then the point itself,
    then right endpoints.

    Watched cliques are bucketed by ``|P(a)|``.  Whenever the bucket of the
    current ``i`` is consulted, all its live members have the same ``P(a)``;
    they are merged into one representative so each region costs O(1).
    """
    member_of = cliques.member_of
    C = len(cliques)
    q = len(partial.boundaries)
    psize = [0] * C
    for v in partial.predrawn:
        for a in member_of[v]:
            psize[a] += 1
    lefts_at: list[list[int]] = [[] for _ in range(q)]
    rights_at: list[list[int]] = [[] for _ in range(q)]
    for v, j in partial.left_index.items():
        lefts_at[j].append(v)
    for v, j in partial.right_index.items():
        rights_at[j].append(v)

    rep = list(range(C))
    regions: dict[int, list[int]] = {}
    dead = [False] * C
    started = [0] * C
    watch: list[list[int]] = [[] for _ in range(len(partial.predrawn) + 1)]
    empty = [a for a in range(C) if psize[a] == 0]
    if empty:
        for a in empty[1:]:
            rep[a] = empty[0]
        watch[0].append(empty[0])

    i = 0

    def visit(region: int) -> None:
        bucket = watch[i]
        if not bucket:
            return
        if len(bucket) > 1 or dead[bucket[0]]:
            head = -1
            for a in bucket:
                if dead[a]:
                    continue
                if head == -1:
                    head = a
                else:
                    rep[a] = head
            bucket[:] = [] if head == -1 else [head]
            if head == -1:
                return
        regions.setdefault(bucket[0], []).append(region)

    visit(0)
    for j in range(q):
        for v in lefts_at[j]:
            i += 1
            for a in member_of[v]:
                started[a] += 1
                if started[a] == psize[a] and not dead[a]:
                    watch[psize[a]].append(a)
        visit(2 * j + 1)
        for v in rights_at[j]:
            i -= 1
            for a in member_of[v]:
                dead[a] = True
        visit(2 * j + 2)

    lo_key = [0] * C
    hi_key = [0] * C
    for a in range(C):
        r = rep[a]
        while rep[r] != r:
            r = rep[r]
        rep[a] = r
        regs = regions.get(r)
        if not regs:
            raise Unplaceable(a)
        lo_key[a] = _region_bounds(regs[0])[0]
        hi_key[a] = _region_bounds(regs[-1])[1]
    return CliqueConstraints(partial.boundaries, psize, rep, regions, lo_key, hi_key)


def build_clique_order(cc: CliqueConstraints) -> SortedEndpointSequence:
    """Sorted endpoints of the open intervals ``(lo(a), hi(a))``.

    Touching intervals (``hi(a) == lo(b)``) make ``a`` precede ``b``
    because right endpoints sort first on ties.
    """
    return SortedEndpointSequence.from_keys(cc.lo_key, cc.hi_key, len(cc.boundaries) + 2)


# ----------------------------------------------------------------------
# placement


def _scaled_boundaries(boundaries, n):
    """Boundaries, step unit and ``eps`` in one exact number system.

    When the common denominator ``D`` of the boundaries is small everything
    is an integer multiple of ``1 / (D * n)``, so coordinates are kept as
    integers scaled by ``S = D * n``.  Otherwise plain rationals are used
    with ``S = 1``.
    """
    n = max(n, 1)
    scaled = as_integers(boundaries)
    if scaled is None:
        b = list(boundaries)
        eps = min(b[j + 1] - b[j] for j in range(len(b) - 1)) / n if len(b) >= 2 else None
        return b, 1, eps
    ints, D = scaled
    b = [x * n for x in ints]
    eps = min(ints[j + 1] - ints[j] for j in range(len(ints) - 1)) if len(ints) >= 2 else None
    return b, D * n, eps


def _place(order, cc: CliqueConstraints, n: int):
    b, unit, eps = _scaled_boundaries(cc.boundaries, n)
    q = len(b)
    total = len(order)
    regions, rep = cc.regions, cc.rep
    ptr: dict[int, int] = {}
    prev = None
    points = [None] * len(rep)
    for a in order:
        r = rep[a]
        regs = regions[r]
        p = ptr.get(r, 0)
        while True:
            if p >= len(regs):
                raise RuntimeError(f"clique {a} could not be placed after {prev}")
            j, is_point = divmod(regs[p], 2)
            if is_point:
                x = b[j]
                if prev is None or x > prev:
                    break
                p += 1
                continue
            hi = b[j] if j < q else None
            if hi is not None and prev is not None and prev >= hi:
                p += 1
                continue
            lo = b[j - 1] if j > 0 else None
            if lo is None and hi is None:
                x = unit if prev is None else prev + unit
            elif lo is None:
                x = hi - total * unit if prev is None else prev + unit
            elif hi is None:
                x = (lo if prev is None or prev < lo else prev) + unit
            else:
                x = (lo if prev is None or prev < lo else prev) + eps
            if hi is not None and x >= hi:
                raise RuntimeError(f"clique {a} overflowed its part")
            break
        ptr[r] = p
        points[a] = x
        prev = x
    return points, unit


def place_clique_points(order, cc: CliqueConstraints, n: int) -> dict[int, Fraction]:
    """Greedy left-most clique-points along ``order``.

    A point admissible on its own (a pre-drawn coordinate) is used when it
    lies right of the previous clique-point.  In a bounded part the point
    goes ``eps`` to the right of the larger of the part's infimum and the
    previous point, where ``eps`` is the length of the shortest bounded part
    divided by ``n``.  Unbounded parts step by one instead.  Failure means
    the order was not a valid reordering and is reported as an internal
    error.
    """
    points, unit = _place(order, cc, n)
    return {a: Fraction(points[a], unit) for a in order}


def _intervals(G: Graph, member_of, rank, cps, predrawn):
    out = {}
    make = ClosedInterval.trusted
    key = rank.__getitem__
    for v in range(G.n):
        iv = predrawn.get(v)
        if iv is None:
            ms = member_of[v]
            if len(ms) == 1:
                c = cps[ms[0]]
                iv = make(c, c)
            else:
                iv = make(cps[min(ms, key=key)], cps[max(ms, key=key)])
        out[v] = iv
    return out


def build_intervals(G: Graph, cliques: CliqueList, points, partial: PartialRepresentation | None):
    """Every vertex spans the clique-points of its cliques; pre-drawn ones stay put."""
    predrawn = partial.predrawn if partial is not None else {}
    order = sorted(points, key=points.__getitem__)
    rank = [0] * len(cliques)
    cps = [None] * len(cliques)
    for i, a in enumerate(order):
        rank[a] = i
        cps[a] = Fraction(points[a])
    return _intervals(G, cliques.member_of, rank, cps, predrawn)


# ----------------------------------------------------------------------
# driver


@dataclass(frozen=True)
class Extension:
    representation: dict
    clique_order: tuple
    cliques: CliqueList


def _as_partial(G: Graph, partial) -> PartialRepresentation:
    if isinstance(partial, PartialRepresentation):
        return partial
    return PartialRepresentation(G, partial)


def _gc_paused(fn):
    # The pipeline allocates many small objects and no cycles; generational
    # collections would rescan the growing heap and add a superlinear term.
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            return fn(*args, **kwargs)
        finally:
            if was_enabled:
                gc.enable()

    return wrapper


@_gc_paused
def extend_detailed(G: Graph, partial=None, verify: bool = True) -> Extension:
    """Like :func:`extend` but also returns the clique order used."""
    partial = _as_partial(G, partial)
    try:
        cliques = maximal_cliques(G)
    except NotChordal as exc:
        raise NotInterval(str(exc)) from exc
    C = len(cliques)
    if C == 0:
        return Extension({}, (), cliques)
    tree = PQTree(range(C))
    # distinct clique sets, swept left to right through the clique numbering
    sets = sorted({m for m in cliques.member_of if len(m) > 1})
    try:
        for members in sets:
            tree.reduce(members)
    except Infeasible as exc:
        raise NotInterval("maximal cliques admit no consecutive ordering") from exc
    cc = sweep_constraints(G, cliques, partial)
    seq = build_clique_order(cc)
    try:
        tree = reorder_interval(tree, seq)
    except Incompatible as exc:
        raise NotExtendible("no clique ordering respects the pre-drawn intervals") from exc
    order = tree.frontier()
    points, unit = _place(order, cc, G.n)
    rank = [0] * C
    for i, a in enumerate(order):
        rank[a] = i
    if unit == 1:
        cps = [Fraction(x) for x in points]
    else:
        cps = [Fraction(x, unit) for x in points]
    rep = _intervals(G, cliques.member_of, rank, cps, partial.predrawn)
    if verify:
        reason = check_extension(G, partial, rep)
        if reason is not None:
            raise RuntimeError(f"internal error, constructed representation is invalid: {reason}")
    return Extension(rep, tuple(order), cliques)


def extend(G: Graph, partial=None, verify: bool = True) -> dict[int, ClosedInterval]:
    """A representation of ``G`` keeping every pre-drawn interval.

    ``partial`` may be a :class:`PartialRepresentation`, a mapping
    ``vertex -> interval`` or ``None``.  Raises :class:`NotInterval` or
    :class:`NotExtendible`; invalid pre-drawn intervals raise
    :class:`InvalidPartial`.  With ``verify`` the result is re-checked
    before it is returned.
    """
    return extend_detailed(G, partial, verify).representation


def recognize(G: Graph) -> dict[int, ClosedInterval]:
    """An interval representation of ``G`` or :class:`NotInterval`."""
    return extend(G, None)

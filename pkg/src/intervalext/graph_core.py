"""Undirected simple graphs, closed rational intervals and intersection checks."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    DuplicateEdge,
    MalformedLine,
    MalformedRational,
    SelfLoop,
    VertexOutOfRange,
)

__all__ = [
    "Graph",
    "ClosedInterval",
    "parse_rational",
    "format_rational",
    "load_graph",
    "dump_graph",
    "intersection_graph",
    "intersection_edges",
    "check_extension",
    "verify_extension",
    "exact_argsort",
    "as_integers",
]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted tuples.  Instances are not meant to be mutated
    after construction.
    """

    __slots__ = ("n", "adj", "m", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {u} {v} out of range for n={n}")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        # one shared int object per vertex keeps adjacency scans cache-friendly
        ids = list(range(n))
        nbrs = [[ids[w] for w in a] for a in nbrs]
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.m = len(seen)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("need one label per vertex")
        self.labels = labels

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self):
        for u, a in enumerate(self.adj):
            for v in a:
                if u < v:
                    yield (u, v)

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, vertices renumbered in the given order."""
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = []
        for i, v in enumerate(vs):
            for w in self.adj[v]:
                j = index.get(w)
                if j is not None and i < j:
                    edges.append((i, j))
        labels = [self.label(v) for v in vs]
        return Graph(len(vs), edges, labels)

    def label(self, v: int):
        return v if self.labels is None else self.labels[v]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, slots=True)
class ClosedInterval:
    left: Fraction
    right: Fraction

    def __post_init__(self):
        if not isinstance(self.left, Fraction):
            object.__setattr__(self, "left", Fraction(self.left))
        if not isinstance(self.right, Fraction):
            object.__setattr__(self, "right", Fraction(self.right))
        if self.left > self.right:
            raise ValueError(f"empty interval [{self.left}, {self.right}]")

    @classmethod
    def trusted(cls, left: Fraction, right: Fraction) -> ClosedInterval:
        """Build without checks from ``Fraction`` endpoints known to satisfy left <= right."""
        iv = object.__new__(cls)
        object.__setattr__(iv, "left", left)
        object.__setattr__(iv, "right", right)
        return iv

    def intersects(self, other: ClosedInterval) -> bool:
        return self.left <= other.right and other.left <= self.right

    def __iter__(self):
        yield self.left
        yield self.right

    def __str__(self):
        return f"[{format_rational(self.left)}, {format_rational(self.right)}]"


def parse_rational(token: str, line=None) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected to keep input exact."""
    parts = token.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            den = int(parts[1])
            if den == 0:
                raise MalformedRational(f"zero denominator in {token!r}", line)
            return Fraction(int(parts[0]), den)
    except ValueError:
        pass
    raise MalformedRational(f"not a rational: {token!r}", line)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _content_lines(text, first_line=1):
    if isinstance(text, bytes):
        text = text.decode()
    for lineno, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def load_graph(text: str | bytes, first_line: int = 1) -> Graph:
    """Parse the ``n m`` header followed by ``m`` edge lines.

    ``first_line`` is the line number reported for the first line of
    ``text`` when it was cut out of a larger file.
    """
    lines = list(_content_lines(text, first_line))
    if not lines:
        raise MalformedLine("missing 'n m' header", first_line)
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 2 or not all(f.isdigit() for f in fields):
        raise MalformedLine(f"expected 'n m', got {header!r}", lineno)
    n, m = int(fields[0]), int(fields[1])
    if len(lines) - 1 != m:
        raise MalformedLine(f"header announces {m} edges, found {len(lines) - 1}", lineno)
    edges = []
    seen = set()
    for lineno, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise MalformedLine(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise MalformedLine(f"non-integer vertex id in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def dump_graph(G: Graph) -> str:
    out = [f"{G.n} {G.m}"]
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def as_integers(values, max_bits: int = 256):
    """Exact integer images ``v * D`` of rationals, ``D`` their common denominator.

    Returns ``(ints, D)``, or ``None`` when ``D`` would exceed ``max_bits``
    bits.  Order and equality are preserved, so sorting the images is an
    exact sort of the rationals at integer speed.
    """
    dens = {v.denominator for v in values}
    D = lcm(*dens) if dens else 1
    if D.bit_length() > max_bits:
        return None
    if D == 1:
        return [v.numerator for v in values], 1
    return [v.numerator * (D // v.denominator) for v in values], D


def exact_argsort(keys: list[tuple]) -> list[int]:
    """Indices sorting ``keys`` exactly, where ``keys[i][0]`` is a rational.

    Sorting on ``Fraction`` objects is slow.  When the common denominator is
    small the rationals are rescaled to integers.  Otherwise the bulk of the
    work is done on float approximations: rounding is monotone, so only runs
    of equal floats can be out of order, and those are re-sorted exactly.
    """
    scaled = as_integers([k[0] for k in keys])
    if scaled is not None:
        ints = scaled[0]
        if keys and len(keys[0]) == 1:
            return sorted(range(len(keys)), key=ints.__getitem__)
        approx = [(ints[i],) + tuple(k[1:]) for i, k in enumerate(keys)]
        return sorted(range(len(keys)), key=approx.__getitem__)
    approx = [(float(k[0]),) + tuple(k[1:]) for k in keys]
    order = sorted(range(len(keys)), key=approx.__getitem__)
    i, total = 0, len(order)
    while i < total:
        f = approx[order[i]][0]
        j = i + 1
        while j < total and approx[order[j]][0] == f:
            j += 1
        if j - i > 1:
            run = order[i:j]
            if len({keys[r][0] for r in run}) > 1:
                order[i:j] = sorted(run, key=keys.__getitem__)
        i = j
    return order


def _normalize_rep(rep):
    if isinstance(rep, Mapping):
        keys = list(rep)
        ivals = [rep[k] for k in keys]
    else:
        ivals = list(rep)
        keys = list(range(len(ivals)))
    ivals = [iv if isinstance(iv, ClosedInterval) else ClosedInterval(*iv) for iv in ivals]
    return keys, ivals


def _sweep_order(intervals: list[ClosedInterval]) -> list[int]:
    """Event indices ``2i`` (left of i) and ``2i+1`` (right of i) in sweep order.

    Left endpoints sort before right endpoints at equal coordinates.
    """
    coords = []
    for iv in intervals:
        coords.append(iv.left)
        coords.append(iv.right)
    scaled = as_integers(coords)
    if scaled is not None:
        ints = scaled[0]
        keys = [2 * x + (i & 1) for i, x in enumerate(ints)]
        return sorted(range(len(keys)), key=keys.__getitem__)
    keys = [(x, i & 1, i >> 1) for i, x in enumerate(coords)]
    return exact_argsort(keys)


def intersection_edges(intervals: list[ClosedInterval], limit: int | None = None):
    """Pairs ``(i, j)``, ``i < j``, of intersecting closed intervals.

    Touching intervals intersect.  Returns ``None`` once more than ``limit``
    pairs have been found.
    """
    active: dict[int, None] = {}
    out = []
    for ev in _sweep_order(intervals):
        i = ev >> 1
        if ev & 1:
            del active[i]
            continue
        for j in active:
            out.append((i, j) if i < j else (j, i))
        if limit is not None and len(out) > limit:
            return None
        active[i] = None
    return out


def _intersection_codes(intervals: list[ClosedInterval], limit: int) -> list[int] | None:
    # same sweep as intersection_edges, pairs encoded as min * n + max
    n = len(intervals)
    active: dict[int, None] = {}
    out: list[int] = []
    for ev in _sweep_order(intervals):
        i = ev >> 1
        if ev & 1:
            del active[i]
            continue
        if active:
            out.extend([j * n + i if j < i else i * n + j for j in active])
            if len(out) > limit:
                return None
        active[i] = None
    return out


def _pairs_are_edges(G: Graph, intervals: list[ClosedInterval]) -> bool:
    """Whether the intersecting pairs of ``intervals`` are exactly the edges of ``G``.

    Every pair met by the sweep must be an edge, and there must be ``m`` of
    them; the sweep meets each intersecting pair once, so this is set
    equality without building the pair list.
    """
    adj = G.adj
    stamp = [-1] * G.n
    active: dict[int, None] = {}
    pairs = 0
    for ev in _sweep_order(intervals):
        i = ev >> 1
        if ev & 1:
            del active[i]
            continue
        if active:
            for w in adj[i]:
                stamp[w] = i
            for j in active:
                if stamp[j] != i:
                    return False
            pairs += len(active)
        active[i] = None
    return pairs == G.m


def intersection_graph(rep) -> Graph:
    """Graph with an edge exactly between intersecting closed intervals.

    ``rep`` is a mapping vertex -> interval (or a sequence indexed by vertex).
    Mappings whose keys are not ``0..n-1`` get vertices numbered in sorted key
    order, with the keys kept as labels.
    """
    keys, ivals = _normalize_rep(rep)
    labels = None
    if keys != list(range(len(keys))):
        if set(keys) == set(range(len(keys))):
            order = sorted(range(len(keys)), key=keys.__getitem__)
        else:
            order = sorted(range(len(keys)), key=lambda i: repr(keys[i]))
            labels = [keys[i] for i in order]
        ivals = [ivals[i] for i in order]
    return Graph(len(ivals), intersection_edges(ivals), labels)


def _predrawn_of(partial):
    if partial is None:
        return {}
    return getattr(partial, "predrawn", partial)


def check_extension(G: Graph, partial, full) -> str | None:
    """Return ``None`` if ``full`` represents ``G`` and extends ``partial``.

    Otherwise return a short human-readable reason.
    """
    predrawn = _predrawn_of(partial)
    if isinstance(full, Mapping):
        if set(full) != set(range(G.n)):
            return "representation must assign an interval to every vertex 0..n-1"
        ivals = [full[v] for v in range(G.n)]
    else:
        ivals = list(full)
        if len(ivals) != G.n:
            return "representation must assign an interval to every vertex 0..n-1"
    ivals = [iv if isinstance(iv, ClosedInterval) else ClosedInterval(*iv) for iv in ivals]
    for v, iv in predrawn.items():
        if not isinstance(iv, ClosedInterval):
            iv = ClosedInterval(*iv)
        got = ivals[v]
        if got.left != iv.left or got.right != iv.right:
            return f"pre-drawn vertex {v} moved from {iv} to {got}"
    if _pairs_are_edges(G, ivals):
        return None
    # slow path, only to name the offending pair
    codes = _intersection_codes(ivals, G.m)
    if codes is None:
        return "representation has more intersecting pairs than G has edges"
    n = G.n
    codes.sort()
    expected = []
    for u, a in enumerate(G.adj):
        base = u * n
        expected += [base + v for v in a[bisect_right(a, u):]]
    if codes == expected:
        return None
    for c in codes:
        u, v = divmod(c, n)
        if not G.has_edge(u, v):
            return f"intervals of non-adjacent {u} and {v} intersect"
    present = set(codes)
    for c in expected:
        if c not in present:
            u, v = divmod(c, n)
            return f"intervals of adjacent {u} and {v} are disjoint"
    raise AssertionError("unreachable")


def verify_extension(G: Graph, partial, full) -> bool:
    return check_extension(G, partial, full) is None

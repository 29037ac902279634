"""Slow reference answers for small instances.

Nothing here imports the fast solvers.  Graphs are read only through
``Graph.n`` and ``Graph.adj``; intervals are plain pairs of rationals.

Interval representations are searched as *endpoint event sequences*.
Whether closed intervals realise a graph depends only on the left-to-right
order of their endpoints, with ties: at one coordinate, everything starting
there meets everything ending there.  So a representation is a sequence of
tie groups, each processed as "all starts, then all ends", and it is valid
exactly when

* a vertex starts only while every open interval is a neighbour and no
  neighbour has already ended, and
* a vertex ends only after all its neighbours have started.

With pre-drawn intervals the line is cut at their distinct endpoints
``x_0 < ... < x_{q-1}``.  The pre-drawn events happen at their coordinates;
free events may join those tie groups or fall strictly between them.
Strictly inside one open gap no tie is ever needed: a group of starts and
ends at one coordinate is equivalent to the same starts followed by the
same ends at distinct coordinates inside the gap.  Hence the search places
free events one at a time inside gaps and as arbitrary subsets at the
pre-drawn coordinates, and this covers every endpoint order relative to the
pre-drawn endpoints.  A witness found this way is turned into concrete
rational coordinates and checked pairwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

__all__ = [
    "brute_consecutive",
    "brute_interval",
    "brute_extend",
    "brute_extend_witness",
    "brute_reorder",
    "brute_simrep",
    "brute_simrep_configurations",
    "maximal_cliques_brute",
    "is_representation",
]


class OracleLimit(ValueError):
    """Instance exceeds the size the brute force is meant for."""


def brute_consecutive(elements, restricting_sets, max_elements: int = 8) -> set[tuple]:
    """All orderings of ``elements`` in which every set is consecutive."""
    elements = tuple(elements)
    if len(elements) > max_elements:
        raise OracleLimit(f"{len(elements)} elements exceed the limit {max_elements}")
    sets = [set(s) for s in restricting_sets]
    out = set()
    for perm in permutations(elements):
        ok = True
        for s in sets:
            hits = [i for i, x in enumerate(perm) if x in s]
            if hits[-1] - hits[0] + 1 != len(hits):
                ok = False
                break
        if ok:
            out.add(perm)
    return out


def brute_reorder(orderings, arcs) -> list[tuple]:
    """Members of ``orderings`` placing ``a`` before ``b`` for every arc."""
    good = []
    for o in orderings:
        pos = {x: i for i, x in enumerate(o)}
        if all(pos[a] < pos[b] for a, b in arcs):
            good.append(o)
    return good


def is_representation(adj, rep) -> bool:
    """Pairwise check that ``rep[v] = (l, r)`` realises the adjacency lists."""
    n = len(adj)
    nbrs = [set(a) for a in adj]
    for v in range(n):
        if rep[v][0] > rep[v][1]:
            return False
    for u in range(n):
        lu, ru = rep[u]
        for v in range(u + 1, n):
            lv, rv = rep[v]
            meet = lu <= rv and lv <= ru
            if meet != (v in nbrs[u]):
                return False
    return True


def _search(n, nbr_masks, slots, free_mask, max_states=2_000_000):
    """Find an event sequence; returns the list of decisions or ``None``.

    ``slots`` alternates gaps and pre-drawn coordinates:
    ``("gap",)`` or ``("point", forced_starts_mask, forced_ends_mask)``.
    Decisions are ``(slot, "S"|"E", vertex)`` for free events.
    """
    full = (1 << n) - 1
    nslots = len(slots)
    seen = set()

    def can_start(v, started, ended):
        opened = started & ~ended
        nb = nbr_masks[v]
        return (opened & ~nb) == 0 and (ended & nb) == 0

    def can_end(v, started):
        return (nbr_masks[v] & ~started) == 0

    # states: (slot, phase, cursor, started, ended); phase 0 = starts at a
    # point, 1 = ends at a point, 2 = inside a gap
    def run(slot, phase, cursor, started, ended):
        if slot == nslots:
            return [] if started == full and ended == full else None
        key = (slot, phase, cursor, started, ended)
        if key in seen:
            return None
        if len(seen) > max_states:
            raise OracleLimit("search space too large")
        seen.add(key)
        kind = slots[slot]
        if kind[0] == "gap":
            nxt = run(slot + 1, 0, -1, started, ended)
            if nxt is not None:
                return nxt
            for v in range(n):
                bit = 1 << v
                if not free_mask & bit:
                    continue
                if not started & bit:
                    if can_start(v, started, ended):
                        rest = run(slot, 2, -1, started | bit, ended)
                        if rest is not None:
                            return [(slot, "S", v)] + rest
                elif not ended & bit and can_end(v, started):
                    rest = run(slot, 2, -1, started, ended | bit)
                    if rest is not None:
                        return [(slot, "E", v)] + rest
            return None
        _, fstarts, fends = kind
        if phase == 0 and cursor == -1:
            # forced starts first
            for v in range(n):
                bit = 1 << v
                if fstarts & bit:
                    if not can_start(v, started, ended):
                        return None
                    started |= bit
            cursor = 0
            key2 = (slot, 0, 0, started, ended)
            if key2 in seen:
                return None
            seen.add(key2)
        if phase == 0:
            # optional free starts with ids >= cursor, or move on to the ends
            rest = run(slot, 1, -1, started, ended)
            if rest is not None:
                return rest
            for v in range(cursor, n):
                bit = 1 << v
                if free_mask & bit and not started & bit and can_start(v, started, ended):
                    rest = run(slot, 0, v + 1, started | bit, ended)
                    if rest is not None:
                        return [(slot, "S", v)] + rest
            return None
        if cursor == -1:
            for v in range(n):
                bit = 1 << v
                if fends & bit:
                    if not can_end(v, started):
                        return None
                    ended |= bit
            cursor = 0
            key2 = (slot, 1, 0, started, ended)
            if key2 in seen:
                return None
            seen.add(key2)
        rest = run(slot + 1, 2, -1, started, ended)
        if rest is not None:
            return rest
        for v in range(cursor, n):
            bit = 1 << v
            if free_mask & bit and started & bit and not ended & bit and can_end(v, started):
                rest = run(slot, 1, v + 1, started, ended | bit)
                if rest is not None:
                    return [(slot, "E", v)] + rest
        return None

    return run(0, 2, -1, 0, 0)


def _recursion_guard(fn):
    import sys

    def wrapper(*args, **kwargs):
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20_000))
        try:
            return fn(*args, **kwargs)
        finally:
            sys.setrecursionlimit(old)

    return wrapper


@_recursion_guard
def brute_extend_witness(G, predrawn=None, max_vertices: int = 8):
    """A representation of ``G`` extending ``predrawn`` or ``None``.

    ``predrawn`` maps vertex -> ``(left, right)`` (anything convertible to
    ``Fraction``).  The pre-drawn intervals are assumed to be valid for the
    subgraph they induce; if not, no extension exists and ``None`` is
    returned.
    """
    n = G.n
    if n > max_vertices:
        raise OracleLimit(f"{n} vertices exceed the limit {max_vertices}")
    predrawn = {v: (Fraction(a), Fraction(b)) for v, (a, b) in (predrawn or {}).items()}
    nbr_masks = [0] * n
    for v in range(n):
        for w in G.adj[v]:
            nbr_masks[v] |= 1 << w
    coords = sorted({c for iv in predrawn.values() for c in iv})
    slots = [("gap",)]
    for x in coords:
        fs = fe = 0
        for v, (a, b) in predrawn.items():
            if a == x:
                fs |= 1 << v
            if b == x:
                fe |= 1 << v
        slots.append(("point", fs, fe))
        slots.append(("gap",))
    free_mask = 0
    for v in range(n):
        if v not in predrawn:
            free_mask |= 1 << v
    decisions = _search(n, nbr_masks, slots, free_mask)
    if decisions is None:
        return None

    # coordinates: gap events spread evenly inside their gap
    per_slot: dict[int, list[tuple[str, int]]] = {}
    for slot, side, v in decisions:
        per_slot.setdefault(slot, []).append((side, v))
    rep = {v: list(iv) for v, iv in predrawn.items()}
    for slot, events in per_slot.items():
        if slot % 2 == 1:
            x = coords[slot // 2]
            pts = [x] * len(events)
        else:
            j = slot // 2
            lo = coords[j - 1] if j > 0 else (coords[0] - len(events) - 1 if coords else Fraction(0))
            hi = coords[j] if j < len(coords) else lo + len(events) + 1
            step = (hi - lo) / (len(events) + 1)
            pts = [lo + step * (i + 1) for i in range(len(events))]
        for (side, v), x in zip(events, pts):
            rep.setdefault(v, [None, None])[0 if side == "S" else 1] = x
    out = {v: (iv[0], iv[1]) for v, iv in rep.items()}
    if not is_representation(G.adj, out):
        raise AssertionError("oracle produced an invalid witness")
    return out


def brute_extend(G, predrawn=None) -> bool:
    """Whether the pre-drawn intervals extend to a representation of ``G``."""
    if predrawn:
        partial = {v: (Fraction(a), Fraction(b)) for v, (a, b) in predrawn.items()}
        sub = sorted(partial)
        for i, u in enumerate(sub):
            for v in sub[i + 1 :]:
                (a, b), (c, d) = partial[u], partial[v]
                if (a <= d and c <= b) != (v in G.adj[u]):
                    return False
    return brute_extend_witness(G, predrawn) is not None


def brute_interval(G) -> bool:
    """Whether ``G`` is an interval graph."""
    return brute_extend_witness(G, None) is not None


def maximal_cliques_brute(G) -> set[tuple[int, ...]]:
    n = G.n
    nbr = [set(a) for a in G.adj]
    cliques = []
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if all(w in nbr[v] for i, v in enumerate(vs) for w in vs[i + 1 :]):
            cliques.append(frozenset(vs))
    return {tuple(sorted(c)) for c in cliques if not any(c < d for d in cliques)}


# ----------------------------------------------------------------------
# simultaneous representations


def brute_simrep_configurations(shared_adj: dict, names) -> list[dict]:
    """Endpoint configurations of the shared vertices consistent with their graph.

    Every assignment of integer endpoints from ``0..2l-1`` is tried and
    compressed to ranks, so each weak order of the ``2l`` endpoints appears
    once.  ``shared_adj`` maps a name to the set of adjacent shared names.
    """
    names = list(names)
    ell = len(names)
    if ell == 0:
        return [{}]
    grid = range(2 * ell)
    pairs = [(a, b) for a in grid for b in grid if a <= b]
    seen = set()
    out = []
    for combo in product(pairs, repeat=ell):
        used = sorted({c for p in combo for c in p})
        rank = {c: i for i, c in enumerate(used)}
        canon = tuple((rank[a], rank[b]) for a, b in combo)
        if canon in seen:
            continue
        seen.add(canon)
        ok = True
        for i in range(ell):
            for j in range(i + 1, ell):
                (a, b), (c, d) = canon[i], canon[j]
                if (a <= d and c <= b) != (names[j] in shared_adj[names[i]]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(dict(zip(names, canon)))
    return out


def brute_simrep(graphs, maps) -> bool:
    """Whether graphs sharing vertices have representations agreeing on them.

    ``maps[i]`` sends each shared name to its vertex id in ``graphs[i]``.
    """
    if not graphs:
        return True
    names = list(maps[0])
    if len(names) > 3:
        raise OracleLimit("brute-force simultaneous search supports at most 3 shared vertices")
    for G in graphs:
        if not brute_interval(G):
            return False
    g0, m0 = graphs[0], maps[0]
    shared_adj = {a: {b for b in names if m0[b] in g0.adj[m0[a]]} for a in names}
    for conf in brute_simrep_configurations(shared_adj, names):
        if all(
            brute_extend_witness(G, {m[a]: conf[a] for a in names}) is not None
            for G, m in zip(graphs, maps)
        ):
            return True
    return False

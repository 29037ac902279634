"""Reordering a PQ-tree so that its frontier extends a given relation.

Two solvers share one outline: process inner nodes bottom-up, order each
node's children locally (any topological sort for a P-node, one of two
orientations for a Q-node) and treat every finished subtree as a single
vertex afterwards.  A locally valid choice never has to be revised, so the
first node without a valid local order proves that no reordering exists.

``reorder_general`` works for an arbitrary relation given as arcs.
``reorder_interval`` handles interval orders given by a sorted endpoint
sequence and never materialises the arcs: two subtrees are compared through
their *handles* (the leftmost right endpoint and the rightmost left endpoint
of their intervals).
"""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import Incompatible
from .pq_tree import LEAF, PNODE, PQTree

__all__ = [
    "DigraphOrder",
    "SortedEndpointSequence",
    "Handles",
    "compute_handles",
    "set_precedes",
    "minimal_elements",
    "reorder_general",
    "reorder_interval",
    "extends",
]

LOWER, UPPER = "LH", "UH"


@dataclass(frozen=True)
class DigraphOrder:
    """A relation given by arcs ``(a, b)`` read as "a must precede b"."""

    vertices: tuple
    arcs: tuple

    def __init__(self, vertices: Iterable[Hashable], arcs: Iterable[tuple]):
        vertices = tuple(vertices)
        known = set(vertices)
        arcs = tuple((a, b) for a, b in arcs)
        for a, b in arcs:
            if a == b:
                raise ValueError(f"self-arc on {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"arc {(a, b)!r} uses an unknown vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", arcs)


class SortedEndpointSequence:
    """Left-to-right order of the endpoints of one open interval per element.

    ``events`` is a sequence of ``(element, "L" | "R")``.  Element ``a``
    precedes ``b`` exactly when the right endpoint of ``a`` comes before the
    left endpoint of ``b``; coinciding coordinates must therefore list right
    endpoints first.
    """

    __slots__ = ("events", "left_pos", "right_pos")

    def __init__(self, events: Iterable[tuple]):
        events = tuple((x, side) for x, side in events)
        left: dict = {}
        right: dict = {}
        for i, (x, side) in enumerate(events):
            if side == "L":
                target = left
            elif side == "R":
                target = right
            else:
                raise ValueError(f"event side must be 'L' or 'R', got {side!r}")
            if x in target:
                raise ValueError(f"element {x!r} has two {side} events")
            target[x] = i
        if left.keys() != right.keys():
            raise ValueError("every element needs exactly one L and one R event")
        self.events = events
        self.left_pos = left
        self.right_pos = right

    @classmethod
    def from_intervals(cls, intervals: Mapping) -> SortedEndpointSequence:
        """Sort ``element -> (left, right)``; infinite endpoints are allowed."""
        keyed = []
        for order, (x, (lo, hi)) in enumerate(intervals.items()):
            if lo > hi:
                raise ValueError(f"interval of {x!r} has left > right")
            keyed.append((lo, 1, order, x, "L"))
            keyed.append((hi, 0, order, x, "R"))
        keyed.sort(key=lambda k: k[:3])
        return cls((k[3], k[4]) for k in keyed)

    @classmethod
    def from_keys(cls, lo: Sequence[int], hi: Sequence[int], nkeys: int) -> SortedEndpointSequence:
        """Bucket-sort elements ``0..len(lo)-1`` with integer coordinates in ``0..nkeys-1``."""
        rb: list[list[int]] = [[] for _ in range(nkeys)]
        lb: list[list[int]] = [[] for _ in range(nkeys)]
        for x in range(len(lo)):
            lb[lo[x]].append(x)
            rb[hi[x]].append(x)
        events = []
        for k in range(nkeys):
            events.extend((x, "R") for x in rb[k])
            events.extend((x, "L") for x in lb[k])
        return cls(events)

    @property
    def elements(self):
        return tuple(self.left_pos)

    def precedes(self, a, b) -> bool:
        return self.right_pos[a] < self.left_pos[b]

    def relation(self) -> DigraphOrder:
        """The induced relation as explicit arcs (quadratic; for checking only)."""
        els = sorted(self.left_pos, key=self.left_pos.__getitem__)
        by_right = sorted(self.right_pos, key=self.right_pos.__getitem__)
        arcs = []
        for a in by_right:
            ra = self.right_pos[a]
            for b in els:
                if a != b and ra < self.left_pos[b]:
                    arcs.append((a, b))
        return DigraphOrder(els, arcs)


@dataclass(frozen=True)
class Handles:
    """Event positions of the lower handle (leftmost R) and upper handle (rightmost L)."""

    lower: int
    upper: int


def set_precedes(h1: Handles, h2: Handles) -> bool:
    """Whether some interval of the first set lies left of some interval of the second.

    Only meaningful for two different sets; a set is never compared with
    itself.
    """
    return h1.lower < h2.upper


def _leaf_positions(T: PQTree, seq: SortedEndpointSequence):
    try:
        lp = [seq.left_pos[x] for x in T.elements]
        rp = [seq.right_pos[x] for x in T.elements]
    except KeyError as exc:
        raise ValueError(f"element {exc.args[0]!r} has no endpoints in the sequence") from None
    if len(seq.left_pos) != len(T.elements):
        raise ValueError("sequence and tree have different elements")
    return lp, rp


def _handle_arrays(T: PQTree, lp, rp, post):
    size = len(T._kind)
    lh = [0] * size
    uh = [0] * size
    kind = T._kind
    children = {}
    for x in post:
        if kind[x] == LEAF:
            lh[x] = rp[x]
            uh[x] = lp[x]
        else:
            ch = T.children(x)
            children[x] = ch
            lh[x] = min(lh[c] for c in ch)
            uh[x] = max(uh[c] for c in ch)
    return lh, uh, children


def compute_handles(T: PQTree, seq: SortedEndpointSequence) -> dict[int, Handles]:
    """Handles of the interval set below every node of ``T``."""
    lp, rp = _leaf_positions(T, seq)
    post = T.postorder()
    lh, uh, _ = _handle_arrays(T, lp, rp, post)
    return {x: Handles(lh[x], uh[x]) for x in post}


def minimal_elements(ordering: Sequence[tuple]) -> frozenset:
    """Minimal members given the restricted handle order of some sets.

    ``ordering`` lists ``(member, "LH" | "UH")`` from left to right, two
    tokens per member.  A member is minimal when no *other* member's lower
    handle precedes its upper handle.  An empty result means no member is
    minimal, which certifies a cycle.
    """
    if not ordering:
        raise ValueError("ordering must be non-empty")
    if len(ordering) >= 2 and ordering[0][1] == LOWER and ordering[1][1] == LOWER:
        return frozenset()
    out = set()
    i = 0
    while i < len(ordering) and ordering[i][1] == UPPER:
        out.add(ordering[i][0])
        i += 1
    if i < len(ordering):
        cand = ordering[i][0]
        rest = ordering[i + 1 :]
        before_upper = []
        for x, kind in rest:
            if x == cand and kind == UPPER:
                break
            if kind == LOWER:
                before_upper.append(x)
        else:
            # the candidate's upper handle is already among the leading group
            before_upper = []
        if not before_upper:
            out.add(cand)
    return frozenset(out)


def extends(order: Sequence, relation: DigraphOrder) -> bool:
    pos = {x: i for i, x in enumerate(order)}
    return all(pos[a] < pos[b] for a, b in relation.arcs)


# ----------------------------------------------------------------------
# general relations


def reorder_general(T: PQTree, relation: DigraphOrder) -> PQTree:
    """A reordering of ``T`` whose frontier extends ``relation``.

    Raises :class:`Incompatible` if none exists.  Runs in time linear in the
    tree size plus the number of arcs, apart from the heap used to make the
    P-node topological sorts deterministic.
    """
    t = T.copy()
    if set(relation.vertices) != set(t.elements) or len(relation.vertices) != len(t.elements):
        raise ValueError("relation and tree have different elements")
    if not relation.arcs or t.kind(t.root) == LEAF:
        return t
    leaf = t.leaf
    arcs = [(leaf(a), leaf(b)) for a, b in relation.arcs]
    size = len(t._kind)
    kind = t._kind

    incident: list[list[int]] = [[] for _ in range(size)]
    for i, (a, b) in enumerate(arcs):
        incident[a].append(i)
        incident[b].append(i)

    # Tarjan's offline LCA assigns each arc to the node where its endpoints'
    # subtrees meet; ``group`` later contracts finished subtrees.  In both
    # union-find structures the root of a set is the node owning it.
    lca_uf = list(range(size))
    group = list(range(size))
    black = [False] * size
    at_node: list[list[int]] = [[] for _ in range(size)]

    def find(uf, x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    stack = [(t.root, 0, t.children(t.root))]
    while stack:
        x, i, ch = stack[-1]
        if i < len(ch):
            stack[-1] = (x, i + 1, ch)
            c = ch[i]
            if kind[c] == LEAF:
                black[c] = True
                for ai in incident[c]:
                    a, b = arcs[ai]
                    other = b if a == c else a
                    if black[other]:
                        at_node[find(lca_uf, other)].append(ai)
                lca_uf[c] = x
            else:
                stack.append((c, 0, t.children(c)))
            continue
        stack.pop()
        _order_node(t, x, ch, at_node[x], arcs, group, find)
        for c in ch:
            group[find(group, c)] = x
        if stack:
            lca_uf[x] = stack[-1][0]
    return t


def _order_node(t, x, ch, arc_ids, arcs, group, find):
    if not arc_ids:
        return
    local = {c: i for i, c in enumerate(ch)}
    pairs = []
    for ai in arc_ids:
        a, b = arcs[ai]
        pairs.append((local[find(group, a)], local[find(group, b)]))
    k = len(ch)
    if t._kind[x] == PNODE:
        out: list[list[int]] = [[] for _ in range(k)]
        indeg = [0] * k
        for u, v in pairs:
            out[u].append(v)
            indeg[v] += 1
        heap = [i for i in range(k) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        if len(order) != k:
            raise Incompatible(f"cycle among the children of P-node {x}")
        t.set_children(x, [ch[i] for i in order])
        return
    if all(u < v for u, v in pairs):
        return
    if all(u > v for u, v in pairs):
        t.reverse(x)
        return
    raise Incompatible(f"neither orientation of Q-node {x} is compatible")


# ----------------------------------------------------------------------
# interval orders


def reorder_interval(T: PQTree, seq: SortedEndpointSequence) -> PQTree:
    """A reordering of ``T`` compatible with the interval order of ``seq``.

    Raises :class:`Incompatible` if none exists.  Linear in the number of
    elements: the handle orders of all nodes are collected in one pass over
    the sequence.
    """
    t = T.copy()
    if t.kind(t.root) == LEAF:
        _leaf_positions(t, seq)
        return t
    lp, rp = _leaf_positions(t, seq)
    post = t.postorder()
    lh, uh, children = _handle_arrays(t, lp, rp, post)
    parent_of = {}
    for x, ch in children.items():
        for c in ch:
            parent_of[c] = x

    # restricted handle orders: tokens 2*c (lower) and 2*c+1 (upper)
    by_pos: list[list[int]] = [[] for _ in range(len(seq.events))]
    for c in parent_of:
        by_pos[lh[c]].append(2 * c)
        by_pos[uh[c]].append(2 * c + 1)
    tokens: dict[int, list[int]] = {x: [] for x in children}
    for bucket in by_pos:
        for tok in bucket:
            tokens[parent_of[tok >> 1]].append(tok)

    kind = t._kind
    for x in post:
        if kind[x] == LEAF:
            continue
        ch = children[x]
        if kind[x] == PNODE:
            order = _topological_by_handles(ch, tokens[x], lh, uh)
            if order is None:
                raise Incompatible(f"cycle among the children of P-node {x}")
            t.set_children(x, order)
        else:
            if _is_topological(ch, lh, uh):
                continue
            rev = ch[::-1]
            if not _is_topological(rev, lh, uh):
                raise Incompatible(f"neither orientation of Q-node {x} is compatible")
            t.reverse(x)
    return t


def _is_topological(order, lh, uh) -> bool:
    # each member must be minimal among itself and its successors
    suffix_min = None
    for c in reversed(order):
        if suffix_min is not None and suffix_min < uh[c]:
            return False
        if suffix_min is None or lh[c] < suffix_min:
            suffix_min = lh[c]
    return True


def _topological_by_handles(ch, toks, lh, uh):
    """Repeatedly remove a minimal child; ``None`` if some step has none.

    A leading upper handle marks a minimal child outright.  A leading lower
    handle marks the only candidate, which is minimal exactly when the next
    lower handle comes after its upper handle.
    """
    ntok = len(toks)
    nxt = list(range(1, ntok + 1))
    prv = list(range(-1, ntok - 1))
    nxt[-1] = -1
    # lower-handle tokens form their own linked list
    lows = [i for i, tok in enumerate(toks) if not tok & 1]
    lnext = {}
    lprev = {}
    for j, i in enumerate(lows):
        lprev[i] = lows[j - 1] if j else -1
        lnext[i] = lows[j + 1] if j + 1 < len(lows) else -1
    where = {}
    for i, tok in enumerate(toks):
        where[tok] = i
    head = 0

    order = []
    for _ in range(len(ch)):
        tok = toks[head]
        c = tok >> 1
        if not tok & 1:
            second = lnext[head]
            if second != -1 and lh[toks[second] >> 1] < uh[c]:
                return None
        order.append(c)
        for i in (where[2 * c], where[2 * c + 1]):
            p, q = prv[i], nxt[i]
            if p == -1:
                head = q
            else:
                nxt[p] = q
            if q != -1:
                prv[q] = p
        i = where[2 * c]
        p, q = lprev[i], lnext[i]
        if p != -1:
            lnext[p] = q
        if q != -1:
            lprev[q] = p
    return order

"""PQ-trees with Booth-Lueker template reduction.

Storage is an index arena.  Leaves are nodes ``0..e-1`` in element order;
inner nodes are appended after them and tombstoned (``DEAD``) when removed.

Sibling lists are doubly linked through an *unordered* pair of neighbour
slots per node, so a Q-node is reversed by swapping its two end pointers
and a partial Q-node can be spliced into its parent in either orientation
in O(1).

Children find their parent through a union-find structure: every inner node
owns a set, a child stores an element of its parent's set, and merging a
Q-node into its parent Q-node is a single union.  This replaces the
"only end children know their parent" device of the original data structure
with an almost-constant-time lookup.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .errors import Infeasible, LimitExceeded

__all__ = [
    "LEAF",
    "PNODE",
    "QNODE",
    "ConsecutiveInstance",
    "PQTree",
    "build_pq_tree",
    "reduce",
    "frontier",
    "enumerate_orderings",
    "parse_bracket",
]

DEAD, LEAF, PNODE, QNODE = -1, 0, 1, 2
_FULL, _PARTIAL = 1, 2


@dataclass(frozen=True)
class ConsecutiveInstance:
    elements: tuple
    restricting_sets: tuple

    def __init__(self, elements: Iterable[Hashable], restricting_sets: Iterable[Iterable[Hashable]]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("elements must be distinct")
        known = set(elements)
        sets = []
        for s in restricting_sets:
            s = frozenset(s)
            if not s:
                raise ValueError("restricting sets must be non-empty")
            if not s <= known:
                raise ValueError(f"restricting set {sorted(map(repr, s))} has unknown elements")
            sets.append(s)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "restricting_sets", tuple(sets))

    def is_consecutive(self, ordering: Sequence) -> bool:
        pos = {x: i for i, x in enumerate(ordering)}
        for s in self.restricting_sets:
            idx = [pos[x] for x in s]
            if max(idx) - min(idx) + 1 != len(s):
                return False
        return True


class PQTree:
    """A PQ-tree over a fixed tuple of distinct elements."""

    def __init__(self, elements: Iterable[Hashable]):
        elements = tuple(elements)
        e = len(elements)
        if e == 0:
            raise ValueError("a PQ-tree needs at least one element")
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}
        if len(self._index) != e:
            raise ValueError("elements must be distinct")
        self._kind = [LEAF] * e
        self._nb1 = [-1] * e
        self._nb2 = [-1] * e
        self._end1 = [-1] * e
        self._end2 = [-1] * e
        self._nchild = [0] * e
        self._up = [-1] * e
        self._home = [-1] * e
        self._uf: list[int] = []
        self._ufsize: list[int] = []
        self._owner: list[int] = []
        self._lab = [0] * e
        self._labst = [0] * e
        self._stamp = 0
        self.root = 0
        if e > 1:
            r = self._new(PNODE)
            for leaf in range(e):
                self._append(r, leaf, False)
            self.root = r

    # ------------------------------------------------------------------
    # arena primitives

    def _new(self, kind: int) -> int:
        x = len(self._kind)
        self._kind.append(kind)
        self._nb1.append(-1)
        self._nb2.append(-1)
        self._end1.append(-1)
        self._end2.append(-1)
        self._nchild.append(0)
        self._up.append(-1)
        el = len(self._uf)
        self._uf.append(el)
        self._ufsize.append(1)
        self._owner.append(x)
        self._home.append(el)
        self._lab.append(0)
        self._labst.append(0)
        return x

    def _find(self, el: int) -> int:
        uf = self._uf
        while uf[el] != el:
            uf[el] = uf[uf[el]]
            el = uf[el]
        return el

    def _parent(self, x: int) -> int:
        el = self._up[x]
        if el < 0:
            return -1
        uf = self._uf
        while uf[el] != el:
            uf[el] = uf[uf[el]]
            el = uf[el]
        return self._owner[el]

    def _swap_nb(self, a: int, old: int, new: int) -> None:
        if self._nb1[a] == old:
            self._nb1[a] = new
        else:
            self._nb2[a] = new

    def _fill(self, end: int, c: int) -> None:
        # an end child has its outward slot empty
        if self._nb1[end] == -1:
            self._nb1[end] = c
        else:
            assert self._nb2[end] == -1, "end child has no free slot"
            self._nb2[end] = c

    def _append(self, p: int, c: int, at_end1: bool) -> None:
        if self._nchild[p] == 0:
            self._end1[p] = self._end2[p] = c
            self._nb1[c] = self._nb2[c] = -1
        else:
            e = self._end1[p] if at_end1 else self._end2[p]
            self._fill(e, c)
            self._nb1[c] = e
            self._nb2[c] = -1
            if at_end1:
                self._end1[p] = c
            else:
                self._end2[p] = c
        self._nchild[p] += 1
        self._up[c] = self._home[p]

    def _detach(self, c: int, p: int = -2) -> None:
        if p == -2:
            p = self._parent(c)
        nb1, nb2 = self._nb1, self._nb2
        a, b = nb1[c], nb2[c]
        if a != -1:
            self._swap_nb(a, c, b)
        if b != -1:
            self._swap_nb(b, c, a)
        other = a if a != -1 else b
        if self._end1[p] == c:
            self._end1[p] = other
        if self._end2[p] == c:
            self._end2[p] = other
        self._nchild[p] -= 1
        nb1[c] = nb2[c] = -1
        self._up[c] = -1

    def _replace(self, old: int, new: int) -> None:
        """Put the detached node ``new`` into the tree position of ``old``."""
        nb1, nb2 = self._nb1, self._nb2
        a, b = nb1[old], nb2[old]
        nb1[new], nb2[new] = a, b
        if a != -1:
            self._swap_nb(a, old, new)
        if b != -1:
            self._swap_nb(b, old, new)
        if self._up[old] < 0:
            self.root = new
            self._up[new] = -1
        else:
            if a == -1 or b == -1:
                p = self._parent(old)
                if self._end1[p] == old:
                    self._end1[p] = new
                if self._end2[p] == old:
                    self._end2[p] = new
            self._up[new] = self._up[old]
        nb1[old] = nb2[old] = -1
        self._up[old] = -1

    def _absorb(self, x: int, y: int) -> None:
        """Make the children of Q-node ``y`` children of ``x`` (links done by caller)."""
        rx = self._find(self._home[x])
        ry = self._find(self._home[y])
        size = self._ufsize
        if size[rx] < size[ry]:
            rx, ry = ry, rx
        self._uf[ry] = rx
        size[rx] += size[ry]
        self._owner[rx] = x
        self._kind[y] = DEAD

    # ------------------------------------------------------------------
    # public read access

    def kind(self, x: int) -> int:
        return self._kind[x]

    def parent(self, x: int) -> int | None:
        p = self._parent(x)
        return None if p < 0 else p

    def leaf(self, element: Hashable) -> int:
        return self._index[element]

    def element(self, leaf: int):
        return self.elements[leaf]

    def children(self, x: int) -> list[int]:
        nb1, nb2 = self._nb1, self._nb2
        out = []
        prev, cur = -1, self._end1[x]
        while cur != -1:
            out.append(cur)
            nxt = nb2[cur] if nb1[cur] == prev else nb1[cur]
            prev, cur = cur, nxt
        return out

    def nodes(self) -> list[int]:
        """Live nodes in pre-order."""
        out = []
        stack = [self.root]
        kind = self._kind
        while stack:
            x = stack.pop()
            out.append(x)
            if kind[x] != LEAF:
                stack.extend(reversed(self.children(x)))
        return out

    def postorder(self) -> list[int]:
        order = self.nodes()
        # reversed pre-order of the mirrored tree is a post-order
        out = []
        stack = [self.root]
        kind = self._kind
        while stack:
            x = stack.pop()
            out.append(x)
            if kind[x] != LEAF:
                stack.extend(self.children(x))
        out.reverse()
        assert len(out) == len(order)
        return out

    def frontier(self) -> list:
        kind, elements = self._kind, self.elements
        out = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            if kind[x] == LEAF:
                out.append(elements[x])
            else:
                stack.extend(reversed(self.children(x)))
        return out

    def leaves_under(self, x: int) -> list:
        kind, elements = self._kind, self.elements
        out = []
        stack = [x]
        while stack:
            y = stack.pop()
            if kind[y] == LEAF:
                out.append(elements[y])
            else:
                stack.extend(reversed(self.children(y)))
        return out

    def copy(self) -> PQTree:
        t = PQTree.__new__(PQTree)
        t.elements = self.elements
        t._index = self._index
        for name in ("_kind", "_nb1", "_nb2", "_end1", "_end2", "_nchild", "_up", "_home",
                     "_uf", "_ufsize", "_owner", "_lab", "_labst"):
            setattr(t, name, list(getattr(self, name)))
        t._stamp = self._stamp
        t.root = self.root
        return t

    # ------------------------------------------------------------------
    # reordering hooks

    def reverse(self, x: int) -> None:
        """Reverse the children of an inner node (the only move a Q-node allows)."""
        if self._kind[x] == LEAF:
            raise ValueError("leaves have no children")
        self._end1[x], self._end2[x] = self._end2[x], self._end1[x]

    def set_children(self, x: int, order: Sequence[int]) -> None:
        """Permute the children of P-node ``x``."""
        if self._kind[x] != PNODE:
            raise ValueError("only P-node children may be permuted")
        if sorted(order) != sorted(self.children(x)):
            raise ValueError("not a permutation of the children")
        nb1, nb2 = self._nb1, self._nb2
        prev = -1
        for c in order:
            nb1[c] = prev
            nb2[c] = -1
            if prev != -1:
                nb2[prev] = c
            prev = c
        self._end1[x] = order[0]
        self._end2[x] = order[-1]

    # ------------------------------------------------------------------
    # reduction

    def reduce(self, subset: Iterable[Hashable]) -> PQTree:
        """Restrict the tree in place so that ``subset`` is also consecutive.

        Raises :class:`Infeasible` when no represented ordering keeps the set
        consecutive; the tree is left in an unspecified state in that case.
        """
        index = self._index
        leaves = list(dict.fromkeys(map(index.__getitem__, subset)))
        size = len(leaves)
        if size <= 1:
            return self
        self._stamp += 1
        st = self._stamp
        up, uf, owner = self._up, self._uf, self._owner
        lab, labst, kind = self._lab, self._labst, self._kind

        def parent(x: int) -> int:
            el = up[x]
            if el < 0:
                return -1
            while uf[el] != el:
                uf[el] = uf[uf[el]]
                el = uf[el]
            return owner[el]

        lpar = [parent(leaf) for leaf in leaves]
        for leaf in leaves:
            lab[leaf] = _FULL
            labst[leaf] = st
        # common case: all leaves are children of one node, which is then
        # the pertinent root
        x = lpar[0]
        if x >= 0 and lpar.count(x) == size:
            if kind[x] == PNODE:
                self._template_p(x, leaves, [], True, st)
            else:
                self._template_q(x, leaves, [], True, st)
            return self

        # Bubble up: climb from the leaves until all chains have met.  The
        # node where the last two chains meet may sit above the pertinent
        # root; the reduction below stops at the first node owning every leaf.
        # info[node] = [pertinent children, leaves below, children processed,
        #               full children, partial children]
        info: dict[int, list] = {}
        queue: list[int] = []
        for p in lpar:
            rec = info.get(p)
            if rec is None:
                info[p] = [1, 0, 0, [], []]
                queue.append(p)
            else:
                rec[0] += 1
        i = 0
        while len(queue) - i > 1:
            x = queue[i]
            i += 1
            p = parent(x)
            if p < 0:
                queue.append(x)
                continue
            rec = info.get(p)
            if rec is None:
                info[p] = [1, 0, 0, [], []]
                queue.append(p)
            else:
                rec[0] += 1

        ready: list[int] = []
        for leaf, p in zip(leaves, lpar):
            rec = info[p]
            rec[1] += 1
            rec[3].append(leaf)
            rec[2] += 1
            if rec[2] == rec[0]:
                ready.append(p)
        k = 0
        while k < len(ready):
            x = ready[k]
            k += 1
            rec = info[x]
            count = rec[1]
            is_root = count == size
            if kind[x] == PNODE:
                res = self._template_p(x, rec[3], rec[4], is_root, st)
            else:
                res = self._template_q(x, rec[3], rec[4], is_root, st)
            if is_root:
                return self
            node, label = res
            lab[node] = label
            labst[node] = st
            # templates may have replaced x by a new node in x's old slot
            rec = info[parent(node)]
            rec[1] += count
            rec[3 if label == _FULL else 4].append(node)
            rec[2] += 1
            if rec[2] == rec[0]:
                ready.append(parent(node))
        raise AssertionError("reduction never reached the pertinent root")

    def _is_full(self, x: int, st: int) -> bool:
        return self._labst[x] == st and self._lab[x] == _FULL

    def _group(self, x: int, members: list[int], st: int) -> int:
        """Detach ``members`` from ``x`` and return them as one full subtree."""
        for c in members:
            self._detach(c, x)
        if len(members) == 1:
            return members[0]
        g = self._new(PNODE)
        for c in members:
            self._append(g, c, False)
        self._lab[g] = _FULL
        self._labst[g] = st
        return g

    def _leftover(self, x: int) -> int:
        """The detached P-node ``x`` as a subtree of its remaining children."""
        if self._nchild[x] >= 2:
            return x
        c = self._end1[x]
        self._detach(c, x)
        self._kind[x] = DEAD
        return c

    def _add_at_end(self, y: int, g: int, full_end: bool, st: int) -> None:
        end1_full = self._is_full(self._end1[y], st)
        if not end1_full:
            assert self._is_full(self._end2[y], st), "partial Q-node without a full end"
        self._append(y, g, end1_full if full_end else not end1_full)

    def _template_p(self, x, F, Pa, is_root, st):
        if not Pa and len(F) == self._nchild[x]:
            return x, _FULL
        if is_root:
            if not Pa:
                g = self._group(x, F, st)
                self._append(x, g, False)
                return None
            if len(Pa) > 2:
                raise Infeasible("P-node with more than two partial children")
            y = Pa[0]
            if F:
                g = self._group(x, F, st)
                self._add_at_end(y, g, True, st)
            if len(Pa) == 2:
                y2 = Pa[1]
                self._detach(y2, x)
                self._merge_q(y, y2, st)
            if self._nchild[x] == 1:
                self._detach(y, x)
                self._replace(x, y)
                self._kind[x] = DEAD
            return None
        if len(Pa) > 1:
            raise Infeasible("non-root P-node with two partial children")
        if not Pa:
            g = self._group(x, F, st)
            y = self._new(QNODE)
            self._replace(x, y)
            self._append(y, self._leftover(x), False)
            self._append(y, g, False)
            return y, _PARTIAL
        y = Pa[0]
        self._detach(y, x)
        g = self._group(x, F, st) if F else -1
        self._replace(x, y)
        if g != -1:
            self._add_at_end(y, g, True, st)
        if self._nchild[x]:
            self._add_at_end(y, self._leftover(x), False, st)
        else:
            self._kind[x] = DEAD
        return y, _PARTIAL

    def _merge_q(self, y1: int, y2: int, st: int) -> None:
        """Join detached partial ``y2`` onto the full end of ``y1``, full ends facing."""
        if self._is_full(self._end1[y1], st):
            f1 = self._end1[y1]
            at1 = True
        else:
            f1 = self._end2[y1]
            at1 = False
        if self._is_full(self._end1[y2], st):
            f2, e2 = self._end1[y2], self._end2[y2]
        else:
            f2, e2 = self._end2[y2], self._end1[y2]
        self._fill(f1, f2)
        self._fill(f2, f1)
        if at1:
            self._end1[y1] = e2
        else:
            self._end2[y1] = e2
        self._nchild[y1] += self._nchild[y2]
        self._absorb(y1, y2)

    def _splice(self, x: int, y: int, emptyside: int, st: int) -> None:
        """Replace partial child ``y`` of Q-node ``x`` by its children.

        ``emptyside`` is the neighbour (or -1 for the end of ``x``) that the
        empty end of ``y`` must face.
        """
        nb1, nb2 = self._nb1, self._nb2
        a, b = nb1[y], nb2[y]
        fullside = b if a == emptyside else a
        if self._is_full(self._end1[y], st):
            yf, ye = self._end1[y], self._end2[y]
        else:
            yf, ye = self._end2[y], self._end1[y]
            assert self._is_full(yf, st), "partial Q-node without a full end"
        for side, end in ((fullside, yf), (emptyside, ye)):
            if side != -1:
                self._swap_nb(side, y, end)
                self._fill(end, side)
            elif self._end1[x] == y:
                self._end1[x] = end
            else:
                self._end2[x] = end
        self._nchild[x] += self._nchild[y] - 1
        self._absorb(x, y)

    def _run(self, s: int, first: int, st: int):
        nb1, nb2, labst = self._nb1, self._nb2, self._labst
        out = []
        prev, cur = s, first
        while cur != -1 and labst[cur] == st:
            out.append(cur)
            nxt = nb2[cur] if nb1[cur] == prev else nb1[cur]
            prev, cur = cur, nxt
        return out, cur

    def _template_q(self, x, F, Pa, is_root, st):
        if not Pa and len(F) == self._nchild[x]:
            return x, _FULL
        if len(Pa) > 2 or (len(Pa) == 2 and not is_root):
            raise Infeasible("too many partial children under a Q-node")
        s = F[0] if F else Pa[0]
        left, beyond_a = self._run(s, self._nb1[s], st)
        right, beyond_b = self._run(s, self._nb2[s], st)
        block = left[::-1] + [s] + right
        if len(block) != len(F) + len(Pa):
            raise Infeasible("pertinent children of a Q-node are not consecutive")
        last = len(block) - 1
        lab = self._lab
        ppos = [k for k, c in enumerate(block) if lab[c] == _PARTIAL]
        if is_root:
            if any(k != 0 and k != last for k in ppos):
                raise Infeasible("partial child inside the pertinent block")
            if last in ppos:
                self._splice(x, block[last], beyond_b, st)
            if 0 in ppos and last != 0:
                self._splice(x, block[0], beyond_a, st)
            return None
        for outer, inner, inner_beyond in ((beyond_a, last, beyond_b), (beyond_b, 0, beyond_a)):
            if outer == -1 and all(k == inner for k in ppos):
                if ppos:
                    self._splice(x, block[inner], inner_beyond, st)
                return x, _PARTIAL
        raise Infeasible("pertinent block of a non-root Q-node does not reach an end")

    # ------------------------------------------------------------------
    # diagnostics and serialisation

    def check(self) -> None:
        """Assert structural invariants; raises ``AssertionError`` on breach."""
        seen_leaves = set()
        stack = [(self.root, -1)]
        assert self._up[self.root] < 0, "root has a parent"
        while stack:
            x, p = stack.pop()
            k = self._kind[x]
            assert k != DEAD, f"dead node {x} reachable"
            if p != -1:
                assert self._parent(x) == p, f"node {x} has wrong parent"
            if k == LEAF:
                assert x not in seen_leaves
                seen_leaves.add(x)
                continue
            ch = self.children(x)
            assert len(ch) == self._nchild[x], f"child count mismatch at {x}"
            assert len(ch) >= 2, f"inner node {x} has {len(ch)} children"
            assert self._end2[x] == ch[-1]
            walked = self.children_reversed(x)
            assert walked == ch[::-1], f"sibling links inconsistent at {x}"
            stack.extend((c, x) for c in ch)
        assert seen_leaves == set(range(len(self.elements))), "leaves do not biject with elements"

    def children_reversed(self, x: int) -> list[int]:
        nb1, nb2 = self._nb1, self._nb2
        out = []
        prev, cur = -1, self._end2[x]
        while cur != -1:
            out.append(cur)
            nxt = nb2[cur] if nb1[cur] == prev else nb1[cur]
            prev, cur = cur, nxt
        return out

    def to_bracket(self) -> str:
        """``(a b)`` for P-nodes, ``[a b c]`` for Q-nodes, leaves by label."""
        def render(x):
            k = self._kind[x]
            if k == LEAF:
                return str(self.elements[x])
            inner = " ".join(render(c) for c in self.children(x))
            return f"({inner})" if k == PNODE else f"[{inner}]"

        return _iterative_render(self) if len(self._kind) > 500 else render(self.root)

    def __repr__(self):
        return f"PQTree({self.to_bracket()})"

    def count_orderings(self) -> int:
        total = 1
        for x in self.nodes():
            k = self._kind[x]
            if k == PNODE:
                total *= factorial(self._nchild[x])
            elif k == QNODE:
                total *= 2
        return total


def _iterative_render(t: PQTree) -> str:
    parts = []
    stack = [(t.root, False)]
    while stack:
        x, closing = stack.pop()
        k = t._kind[x]
        if closing:
            parts.append(")" if k == PNODE else "]")
            continue
        if parts and parts[-1] not in ("(", "["):
            parts.append(" ")
        if k == LEAF:
            parts.append(str(t.elements[x]))
            continue
        parts.append("(" if k == PNODE else "[")
        stack.append((x, True))
        stack.extend((c, False) for c in reversed(t.children(x)))
    return "".join(parts)


def build_pq_tree(instance, restricting_sets=None) -> PQTree:
    """PQ-tree of all orderings keeping every restricting set consecutive.

    Accepts a :class:`ConsecutiveInstance` or ``(elements, sets)``.  Raises
    :class:`Infeasible` when no such ordering exists.
    """
    if restricting_sets is not None or not isinstance(instance, ConsecutiveInstance):
        instance = ConsecutiveInstance(instance, restricting_sets or ())
    tree = PQTree(instance.elements)
    for s in instance.restricting_sets:
        tree.reduce(s)
    return tree


def reduce(tree: PQTree, subset: Iterable[Hashable]) -> PQTree:
    """Functional form of :meth:`PQTree.reduce`; ``tree`` is left untouched."""
    return tree.copy().reduce(subset)


def frontier(tree: PQTree) -> list:
    return tree.frontier()


def enumerate_orderings(tree: PQTree, limit: int = 100_000) -> set[tuple]:
    """Every frontier of the equivalence class of ``tree``."""
    if tree.count_orderings() > limit:
        raise LimitExceeded(f"tree represents more than {limit} orderings")
    memo: dict[int, list[tuple]] = {}
    for x in tree.postorder():
        k = tree._kind[x]
        if k == LEAF:
            memo[x] = [(tree.elements[x],)]
            continue
        ch = tree.children(x)
        if k == PNODE:
            arrangements = permutations(ch)
        else:
            arrangements = (ch, ch[::-1])
        out = []
        for arr in arrangements:
            partial = [()]
            for c in arr:
                partial = [a + b for a in partial for b in memo[c]]
            out.extend(partial)
        for c in ch:
            del memo[c]
        memo[x] = out
    return set(memo[tree.root])


def parse_bracket(text: str) -> PQTree:
    """Inverse of :meth:`PQTree.to_bracket` for whitespace-free labels."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").replace("[", " [ ").replace("]", " ] ").split()
    labels = [t for t in tokens if t not in "()[]"]
    tree = PQTree(labels)
    if len(labels) == 1:
        if tokens != labels:
            raise ValueError("a single leaf cannot be wrapped in a node")
        return tree
    # discard the initial universal root and rebuild
    tree._kind[tree.root] = DEAD
    for leaf in range(len(labels)):
        tree._nb1[leaf] = tree._nb2[leaf] = -1
        tree._up[leaf] = -1
    stack: list[tuple[int, str]] = []
    next_leaf = 0
    root = -1
    for tok in tokens:
        if tok in "([":
            stack.append((tree._new(PNODE if tok == "(" else QNODE), tok))
        elif tok in ")]":
            node, opener = stack.pop()
            if (opener, tok) not in (("(", ")"), ("[", "]")):
                raise ValueError("mismatched brackets")
            if tree._nchild[node] < 2:
                raise ValueError("inner nodes need at least two children")
            if stack:
                tree._append(stack[-1][0], node, False)
            else:
                root = node
        else:
            if not stack:
                raise ValueError("leaf outside any node")
            tree._append(stack[-1][0], next_leaf, False)
            next_leaf += 1
    if stack or root == -1:
        raise ValueError("unbalanced brackets")
    tree.root = root
    tree._up[root] = -1
    return tree

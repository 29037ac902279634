"""Maximal cliques of chordal graphs in linear time.

LexBFS gives a visit order whose reverse is a perfect elimination ordering
whenever the graph is chordal.  The ordering is verified with the
Tarjan-Yannakakis parent test and the maximal cliques are read off the
"earlier neighbourhoods".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotChordal
from .graph_core import Graph

__all__ = ["CliqueList", "lex_bfs", "is_lex_bfs_order", "maximal_cliques"]


@dataclass(frozen=True)
class CliqueList:
    cliques: tuple[tuple[int, ...], ...]
    member_of: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __getitem__(self, i):
        return self.cliques[i]


def lex_bfs(G: Graph) -> list[int]:
    """Lexicographic breadth-first search order of ``G``.

    Partition refinement over a linked list of cells.  Every cell keeps its
    vertices in increasing id order, so ties are broken by lowest id.
    """
    return _lex_bfs(G)


def _lex_bfs(G: Graph) -> list[int]:
    n = G.n
    if n == 0:
        return []
    adj = G.adj
    # vertex links inside a cell
    vprev = [-1] * n
    vnext = [-1] * n
    cell_of = [0] * n
    # cell arrays; cells form a linked list ordered front to back
    head = [0]
    tail = [n - 1]
    cprev = [-1]
    cnext = [-1]
    split = [-1]  # cell created in front of this one during the current round
    for v in range(n):
        vprev[v] = v - 1
        vnext[v] = v + 1 if v + 1 < n else -1
    first = 0
    visited = [False] * n
    order = []

    for _ in range(n):
        v = head[first]
        nx = vnext[v]
        head[first] = nx
        if nx == -1:
            # the front cell is exhausted; unlink it
            tail[first] = -1
            first = cnext[first]
            if first != -1:
                cprev[first] = -1
        else:
            vprev[nx] = -1
        visited[v] = True
        order.append(v)
        touched = []
        for w in adj[v]:
            if visited[w]:
                continue
            c = cell_of[w]
            s = split[c]
            if s == -1:
                s = len(head)
                head.append(-1)
                tail.append(-1)
                split.append(-1)
                p = cprev[c]
                cprev.append(p)
                cnext.append(c)
                cprev[c] = s
                if p == -1:
                    first = s
                else:
                    cnext[p] = s
                split[c] = s
                touched.append(c)
            # unlink w from c
            a, b = vprev[w], vnext[w]
            if a == -1:
                head[c] = b
            else:
                vnext[a] = b
            if b == -1:
                tail[c] = a
            else:
                vprev[b] = a
            # append w to s
            t = tail[s]
            vprev[w] = t
            vnext[w] = -1
            if t == -1:
                head[s] = w
            else:
                vnext[t] = w
            tail[s] = w
            cell_of[w] = s
        for c in touched:
            split[c] = -1
            if head[c] == -1:
                # c always has the freshly created cell in front of it
                p, q = cprev[c], cnext[c]
                cnext[p] = q
                if q != -1:
                    cprev[q] = p
    return order


def _lex_bfs_sets(G: Graph, earlier: list[list[int]]) -> list[int]:
    # Same refinement with cells held as sets: moving a vertex is two C
    # calls instead of a dozen list updates.  The front cell hands out an
    # arbitrary member, so ties are not broken by id; maximal_cliques accepts
    # any LexBFS order.
    n = G.n
    adj = G.adj
    cells = [set(range(n))]
    cprev = [-1]
    cnext = [-1]
    split = [-1]
    cell_of = [0] * n
    visited = [False] * n
    order = []
    first = 0
    for _ in range(n):
        front = cells[first]
        v = front.pop()
        if not front:
            first = cnext[first]
            if first != -1:
                cprev[first] = -1
        visited[v] = True
        order.append(v)
        touched = []
        for w in adj[v]:
            if visited[w]:
                continue
            earlier[w].append(v)
            c = cell_of[w]
            s = split[c]
            if s == -1:
                s = len(cells)
                cells.append(set())
                split.append(-1)
                p = cprev[c]
                cprev.append(p)
                cnext.append(c)
                cprev[c] = s
                if p == -1:
                    first = s
                else:
                    cnext[p] = s
                split[c] = s
                touched.append(c)
            cells[c].discard(w)
            cells[s].add(w)
            cell_of[w] = s
        for c in touched:
            split[c] = -1
            if not cells[c]:
                p, q = cprev[c], cnext[c]
                cnext[p] = q
                if q != -1:
                    cprev[q] = p
    return order


def is_lex_bfs_order(G: Graph, order: list[int]) -> bool:
    """Check the LexBFS property directly from its definition.

    Visiting the ``i``-th vertex stamps ``n - i`` on its unvisited
    neighbours; each visited vertex must carry a lexicographically maximal
    stamp sequence among the vertices still unvisited at that moment.
    """
    n = G.n
    if sorted(order) != list(range(n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        def label(u):
            return sorted((n - pos[w] for w in G.adj[u] if pos[w] < i), reverse=True)
        best = label(v)
        for u in order[i + 1 :]:
            if label(u) > best:
                return False
    return True


def maximal_cliques(G: Graph) -> CliqueList:
    """All maximal cliques of a chordal graph, or raise :class:`NotChordal`."""
    n = G.n
    if n == 0:
        return CliqueList((), ())
    # earlier[w] lists the neighbours visited before w, in visit order; the
    # last one is the "parent"
    earlier: list[list[int]] = [[] for _ in range(n)]
    order = _lex_bfs_sets(G, earlier)
    # earlier(v) must lie inside earlier(parent) + {parent}, and C(v) =
    # {v} + earlier(v) is maximal unless a child extends it by one
    cover: list[set[int] | None] = [None] * n
    not_max = [False] * n
    for v in order:
        e = earlier[v]
        if not e:
            continue
        p = e[-1]
        ep = earlier[p]
        if len(e) > 1:
            c = cover[p]
            if c is None:
                c = cover[p] = set(ep)
                c.add(p)
            if not c.issuperset(e):
                raise NotChordal(v)
        if len(e) == len(ep) + 1:
            not_max[p] = True
    cliques = []
    members: list[list[int]] = [[] for _ in range(n)]
    for v in order:
        if not_max[v]:
            continue
        clique = earlier[v]
        clique.append(v)
        clique.sort()
        cid = len(cliques)
        cliques.append(tuple(clique))
        for w in clique:
            members[w].append(cid)
    return CliqueList(tuple(cliques), tuple(tuple(m) for m in members))

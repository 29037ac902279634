import ast
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import intervalext.oracle as oracle_module
from intervalext.graph_core import Graph
from intervalext.oracle import (
    OracleLimit,
    brute_consecutive,
    brute_extend,
    brute_extend_witness,
    brute_interval,
    brute_reorder,
    is_representation,
    maximal_cliques_brute,
)

from strategies import graphs

def test_oracle_imports_no_fast_path():
    tree = ast.parse(Path(oracle_module.__file__).read_text())
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            assert node.level == 0, "oracle must not import package modules"
            assert not (node.module or "").startswith("intervalext")
        if isinstance(node, ast.Import):
            assert all(not a.name.startswith("intervalext") for a in node.names)


def test_consecutive_examples():
    assert brute_consecutive("ab", [set("ab")]) == {("a", "b"), ("b", "a")}
    assert brute_consecutive("abc", [set("ac"), set("ab"), set("bc")]) == set()
    assert len(brute_consecutive("abcd", [])) == 24
    assert len(brute_consecutive("abcd", [set("abcd")])) == 24
    with pytest.raises(OracleLimit):
        brute_consecutive(range(9), [])


def test_reorder_oracle():
    orderings = [("a", "b"), ("b", "a")]
    assert brute_reorder(orderings, [("b", "a")]) == [("b", "a")]
    assert brute_reorder(orderings, [("a", "b"), ("b", "a")]) == []


def test_extend_examples():
    blocker = Graph(4, [(0, 1), (1, 2)])
    assert not brute_extend(blocker, {0: (0, 1), 2: (3, 4), 3: (Fraction(3, 2), Fraction(5, 2))})
    assert brute_extend(Graph(2, [(0, 1)]), {0: (0, 1)})
    # an inconsistent partial is rejected before searching
    assert not brute_extend(Graph(2, []), {0: (0, 2), 1: (1, 3)})


def test_interval_examples():
    assert not brute_interval(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    for n in range(1, 8):
        assert brute_interval(Graph(n, [(i, i + 1) for i in range(n - 1)]))
        assert brute_interval(Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)]))
    assert brute_interval(Graph(4, [(0, 1), (0, 2), (0, 3)]))
    # the claw with subdivided edges has an asteroidal triple
    assert not brute_interval(Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]))


def test_maximal_cliques_brute():
    assert maximal_cliques_brute(Graph(3, [(0, 1), (1, 2)])) == {(0, 1), (1, 2)}


def grid_search(G, predrawn):
    """Naive backtracking over a fine rational grid.

    With ``f`` free vertices at most ``2f`` free endpoints fall into any one
    gap between pre-drawn coordinates, so ``2f`` grid points inside every
    gap and beyond both ends realise every endpoint order.
    """
    free = [v for v in range(G.n) if v not in predrawn]
    coords = sorted({Fraction(c) for iv in predrawn.values() for c in iv}) or [Fraction(0)]
    k = 2 * len(free)
    step = min([b - a for a, b in zip(coords, coords[1:])] or [1]) / (k + 1)
    grid = set(coords)
    for x in coords:
        grid.update(x + step * i for i in range(-k, k + 1))
    grid = sorted(grid)
    pairs = [(a, b) for i, a in enumerate(grid) for b in grid[i:]]
    rep = {v: tuple(map(Fraction, iv)) for v, iv in predrawn.items()}
    adj = [set(a) for a in G.adj]

    def ok(v, iv):
        return all((iv[0] <= w[1] and w[0] <= iv[1]) == (u in adj[v]) for u, w in rep.items())

    def go(i):
        if i == len(free):
            return True
        v = free[i]
        for iv in pairs:
            if ok(v, iv):
                rep[v] = iv
                if go(i + 1):
                    return True
                del rep[v]
        return False

    return go(0)


@settings(max_examples=80)
@given(graphs(max_n=4), st.data())
def test_extend_oracle_matches_grid_search(G, data):
    vs = data.draw(st.sets(st.integers(0, max(G.n - 1, 0)), max_size=min(2, G.n)))
    pre = {v: tuple(sorted(data.draw(st.tuples(st.integers(0, 2), st.integers(0, 2))))) for v in vs}
    consistent = all(
        ((pre[u][0] <= pre[v][1] and pre[v][0] <= pre[u][1]) == G.has_edge(u, v))
        for u in pre for v in pre if u < v
    )
    want = consistent and grid_search(G, pre)
    assert brute_extend(G, pre) == want


def test_grid_search_confirms_blocker():
    blocker = Graph(4, [(0, 1), (1, 2)])
    pre = {0: (0, 1), 2: (3, 4), 3: (Fraction(3, 2), Fraction(5, 2))}
    assert not grid_search(blocker, pre)
    del pre[3]
    assert grid_search(blocker, pre)


@given(graphs(max_n=6), st.data())
def test_witnesses_are_representations(G, data):
    w = brute_extend_witness(G)
    if w is not None:
        assert is_representation(G.adj, w)

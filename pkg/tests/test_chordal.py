import itertools

import pytest
from hypothesis import given

from intervalext.chordal import is_lex_bfs_order, lex_bfs, maximal_cliques
from intervalext.errors import NotChordal
from intervalext.graph_core import Graph
from intervalext.oracle import maximal_cliques_brute

from strategies import graphs, interval_graphs


def has_long_induced_cycle(G):
    """Brute force: an induced cycle on at least four vertices."""
    for k in range(4, G.n + 1):
        for vs in itertools.combinations(range(G.n), k):
            H = G.induced(vs)
            if H.m == k and all(len(a) == 2 for a in H.adj):
                # 2-regular on k vertices; connected means one k-cycle
                seen, stack = {0}, [0]
                while stack:
                    for w in H.adj[stack.pop()]:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) == k:
                    return True
    return False


def test_lex_bfs_small_cases():
    assert lex_bfs(Graph(1)) == [0]
    assert lex_bfs(Graph(0)) == []
    # lowest id first, then its neighbour
    assert lex_bfs(Graph(3, [(0, 1), (1, 2)])) == [0, 1, 2]
    K3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
    for order in itertools.permutations(range(3)):
        assert is_lex_bfs_order(K3, list(order))


def test_lex_bfs_prefers_lexicographically_larger_labels():
    # 0 visits 1 and 2; 1 then stamps 3, so 3 must precede 4
    G = Graph(5, [(0, 1), (0, 2), (1, 3), (2, 4)])
    order = lex_bfs(G)
    assert order == [0, 1, 2, 3, 4]
    assert not is_lex_bfs_order(G, [0, 1, 2, 4, 3])


@given(graphs(max_n=9))
def test_lex_bfs_satisfies_definition(G):
    assert is_lex_bfs_order(G, lex_bfs(G))


def test_clique_examples():
    assert maximal_cliques(Graph(3, [(0, 1), (1, 2)])).cliques == ((0, 1), (1, 2))
    K4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert maximal_cliques(K4).cliques == ((0, 1, 2, 3),)
    with pytest.raises(NotChordal) as info:
        maximal_cliques(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert 0 <= info.value.witness < 4


@given(graphs(max_n=8))
def test_cliques_match_brute_force(G):
    try:
        cl = maximal_cliques(G)
    except NotChordal:
        assert has_long_induced_cycle(G)
        return
    assert not has_long_induced_cycle(G)
    assert set(cl.cliques) == maximal_cliques_brute(G)
    assert len(cl) <= max(G.n, 1)


@given(interval_graphs(max_n=10))
def test_clique_list_invariants(arg):
    G, _ = arg
    cl = maximal_cliques(G)
    sets = [set(c) for c in cl.cliques]
    for c in cl.cliques:
        assert list(c) == sorted(c)
    for i, a in enumerate(sets):
        assert not any(i != j and a <= b for j, b in enumerate(sets))
    for v in range(G.n):
        assert cl.member_of[v] and all(v in sets[a] for a in cl.member_of[v])
    for u, v in G.edges():
        assert set(cl.member_of[u]) & set(cl.member_of[v])
    assert sum(map(len, sets)) <= G.n + 2 * G.m

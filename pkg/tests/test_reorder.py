from hypothesis import assume, given
from hypothesis import strategies as st

import pytest

from intervalext.errors import Incompatible, Infeasible
from intervalext.oracle import brute_reorder
from intervalext.pq_tree import PQTree, build_pq_tree, enumerate_orderings, frontier, parse_bracket
from intervalext.reorder import (
    DigraphOrder,
    Handles,
    SortedEndpointSequence,
    compute_handles,
    extends,
    minimal_elements,
    reorder_general,
    reorder_interval,
    set_precedes,
)

from strategies import consecutive_instances, interval_families

CYCLE_TREE = "((a b c) [d e f])"
CYCLE_ARCS = [("b", "a"), ("a", "c"), ("c", "d"), ("e", "b")]


@st.composite
def trees(draw, max_leaves=7):
    inst = draw(consecutive_instances(max_elements=max_leaves))
    try:
        return build_pq_tree(*inst)
    except Infeasible:
        assume(False)


def test_cycle_between_contracted_groups():
    T = parse_bracket(CYCLE_TREE)
    rel = DigraphOrder("abcdef", CYCLE_ARCS)
    with pytest.raises(Incompatible):
        reorder_general(T, rel)
    # brute force agrees: no frontier extends the arcs
    assert brute_reorder(enumerate_orderings(T), CYCLE_ARCS) == []


def test_empty_relation_keeps_tree():
    T = parse_bracket(CYCLE_TREE)
    assert frontier(reorder_general(T, DigraphOrder("abcdef", []))) == frontier(T)


def test_unique_topological_sort():
    T = PQTree("abc")
    assert "".join(frontier(reorder_general(T, DigraphOrder("abc", [("c", "a"), ("a", "b")])))) == "cab"


def test_q_node_is_reversed_when_needed():
    T = parse_bracket("[a b c]")
    rel = DigraphOrder("abc", [("c", "a")])
    assert "".join(frontier(reorder_general(T, rel))) == "cba"
    with pytest.raises(Incompatible):
        reorder_general(T, DigraphOrder("abc", [("c", "a"), ("a", "b")]))


def test_digraph_validation():
    with pytest.raises(ValueError):
        DigraphOrder("ab", [("a", "a")])
    with pytest.raises(ValueError):
        DigraphOrder("ab", [("a", "z")])


def test_leaf_and_pair_handles():
    seq = SortedEndpointSequence.from_intervals({"a": (0, 2), "b": (1, 5)})
    T = PQTree("ab")
    h = compute_handles(T, seq)
    a, b = T.leaf("a"), T.leaf("b")
    assert h[a] == Handles(seq.right_pos["a"], seq.left_pos["a"])
    assert h[T.root] == Handles(seq.right_pos["a"], seq.left_pos["b"])


def six_handle_configuration():
    # I1 = {p}, I2 = {q1, q2}, I3 = {s}; handle order
    # UH(I1) LH(I2) UH(I3) LH(I1) UH(I2) LH(I3)
    fam = {"p": (1, 4), "q1": (0, 2), "q2": (5, 7), "s": (3, 6)}
    seq = SortedEndpointSequence.from_intervals(fam)
    T = build_pq_tree(["p", "q1", "q2", "s"], [{"q1", "q2"}])
    h = compute_handles(T, seq)
    q = T.parent(T.leaf("q1"))
    return seq, h[T.leaf("p")], h[q], h[T.leaf("s")]


def test_six_handle_configuration():
    seq, h1, h2, h3 = six_handle_configuration()
    assert h1.upper < h2.lower < h3.upper < h1.lower < h2.upper < h3.lower
    assert set_precedes(h1, h2)
    assert set_precedes(h2, h3)
    assert not set_precedes(h1, h3)
    assert not set_precedes(h3, h1)


def test_disjoint_pair_precedes_one_way():
    seq = SortedEndpointSequence.from_intervals({"a": (0, 1), "b": (2, 3)})
    T = PQTree("ab")
    h = compute_handles(T, seq)
    ha, hb = h[T.leaf("a")], h[T.leaf("b")]
    assert set_precedes(ha, hb) and not set_precedes(hb, ha)


@given(interval_families(min_n=2, max_n=7), st.data())
def test_set_precedes_matches_pairwise(fam, data):
    names = list(range(len(fam)))
    cut = data.draw(st.integers(1, len(names) - 1))
    perm = data.draw(st.permutations(names))
    I1, I2 = set(perm[:cut]), set(perm[cut:])
    seq = SortedEndpointSequence.from_intervals(dict(enumerate(fam)))
    T = build_pq_tree(names, [I1, I2])
    h = compute_handles(T, seq)

    def node(members):
        x = T.leaf(next(iter(members)))
        while set(T.leaves_under(x)) != members:
            x = T.parent(x)
        return x

    n1, n2 = node(I1), node(I2)
    want = any(fam[a][1] <= fam[b][0] for a in I1 for b in I2)
    assert set_precedes(h[n1], h[n2]) == want


def test_minimal_elements_cases():
    LH, UH = "LH", "UH"
    assert minimal_elements([("A", LH), ("B", LH), ("A", UH), ("B", UH)]) == frozenset()
    tokens = [("A", UH), ("B", UH), ("C", LH), ("C", UH), ("A", LH), ("B", LH)]
    assert minimal_elements(tokens) == {"A", "B", "C"}
    assert minimal_elements([("A", LH), ("A", UH)]) == {"A"}
    # each lower handle precedes the other's upper handle: a 2-cycle
    assert minimal_elements([("A", LH), ("B", UH), ("B", LH), ("A", UH)]) == frozenset()
    assert minimal_elements([("B", UH), ("B", LH), ("A", UH), ("A", LH)]) == {"B"}


@given(st.integers(1, 5).flatmap(lambda k: st.permutations([(m, t) for m in range(k) for t in ("LH", "UH")])))
def test_minimal_elements_matches_definition(tokens):
    pos = {tok: i for i, tok in enumerate(tokens)}
    members = {m for m, _ in tokens}
    want = {
        x for x in members
        if not any(pos[(y, "LH")] < pos[(x, "UH")] for y in members if y != x)
    }
    assert minimal_elements(list(tokens)) == want


def test_pairwise_intersecting_family_keeps_tree():
    T = parse_bracket("((a b) [c d e])")
    seq = SortedEndpointSequence.from_intervals({x: (0, 1) for x in "abcde"})
    assert frontier(reorder_interval(T, seq)) == frontier(T)


def test_worked_interval_collection():
    events = ["La", "Lb", "Ra", "Lc", "Rb", "Ld", "Rc", "Rd", "Le", "Re"]
    seq = SortedEndpointSequence((e[1], e[0]) for e in events)
    arcs = {("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("b", "e"), ("c", "e"), ("d", "e")}
    assert set(seq.relation().arcs) == arcs
    out = frontier(reorder_interval(PQTree("abcde"), seq))
    assert extends(out, DigraphOrder("abcde", arcs))


def test_infinite_endpoints_are_comparable_to_nothing():
    inf = float("inf")
    seq = SortedEndpointSequence.from_intervals({"a": (-inf, inf), "b": (0, 1), "c": (2, 3)})
    assert set(seq.relation().arcs) == {("b", "c")}


def test_sequence_validation():
    with pytest.raises(ValueError):
        SortedEndpointSequence([("a", "L")])
    with pytest.raises(ValueError):
        SortedEndpointSequence([("a", "L"), ("a", "X")])
    with pytest.raises(ValueError):
        reorder_interval(PQTree("ab"), SortedEndpointSequence.from_intervals({"a": (0, 1)}))


def _solve(fn, T, arg):
    try:
        return fn(T, arg)
    except Incompatible:
        return None


@given(trees(), st.data())
def test_general_matches_brute_force(T, data):
    els = list(T.elements)
    arcs = data.draw(st.lists(st.tuples(st.sampled_from(els), st.sampled_from(els)), max_size=6))
    arcs = [(a, b) for a, b in arcs if a != b]
    rel = DigraphOrder(els, arcs)
    orderings = enumerate_orderings(T)
    got = _solve(reorder_general, T, rel)
    want = brute_reorder(orderings, arcs)
    assert (got is not None) == bool(want)
    if got is not None:
        got.check()
        assert tuple(frontier(got)) in orderings and extends(frontier(got), rel)


@given(trees(), st.data())
def test_interval_matches_general(T, data):
    els = list(T.elements)
    fam = data.draw(interval_families(min_n=len(els), max_n=len(els)))
    seq = SortedEndpointSequence.from_intervals(dict(zip(els, fam)))
    rel = seq.relation()
    a = _solve(reorder_interval, T, seq)
    b = _solve(reorder_general, T, rel)
    assert (a is None) == (b is None)
    assert (a is None) == (not brute_reorder(enumerate_orderings(T), rel.arcs))
    if a is not None:
        a.check()
        assert tuple(frontier(a)) in enumerate_orderings(T) and extends(frontier(a), rel)


@given(trees(max_leaves=6), st.data())
def test_pinning_a_local_solution_stays_feasible(T, data):
    els = list(T.elements)
    fam = data.draw(interval_families(min_n=len(els), max_n=len(els)))
    rel = SortedEndpointSequence.from_intervals(dict(zip(els, fam))).relation()
    orderings = enumerate_orderings(T)
    assume(brute_reorder(orderings, rel.arcs))
    inner = [x for x in T.nodes() if T.children(x)]
    assume(inner)
    x = data.draw(st.sampled_from(inner))
    block = set(T.leaves_under(x))
    inside = [(a, b) for a, b in rel.arcs if a in block and b in block]
    local = sorted({tuple(e for e in o if e in block) for o in orderings})
    local = [o for o in local if all(o.index(a) < o.index(b) for a, b in inside)]
    pinned = data.draw(st.sampled_from(local))
    arcs = list(rel.arcs) + list(zip(pinned, pinned[1:]))
    out = reorder_general(T, DigraphOrder(els, arcs))
    assert tuple(e for e in frontier(out) if e in block) == pinned

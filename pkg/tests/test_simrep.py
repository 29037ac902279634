import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalext import fuzz
from intervalext.errors import BoundExceeded, InvalidInstance, MalformedLine, NoSimRep, NotExtendible
from intervalext.graph_core import Graph, check_extension
from intervalext.oracle import brute_simrep, brute_simrep_configurations
from intervalext.repext import extend
from intervalext.simrep import (
    SimRepInstance,
    dump_simrep,
    endpoint_configurations,
    load_simrep,
    simrep,
)

TRIANGLE = Graph(3, [(0, 1), (1, 2), (0, 2)])
PATH = Graph(3, [(0, 1), (1, 2)])


def nested(outer):
    # shared a=0, b=1.  x=2 and y=3 meet only `outer` and each has a private
    # neighbour, so they straddle opposite ends of `outer` and the other
    # shared interval sits strictly between them
    return Graph(6, [(0, 1), (outer, 2), (outer, 3), (2, 4), (3, 5)])


def assert_simultaneous(inst, reps):
    for G, rep in zip(inst.graphs, reps):
        assert check_extension(G, None, rep) is None
    for a in inst.shared:
        assert len({rep[m[a]] for rep, m in zip(reps, inst.maps)}) == 1


def test_triangle_and_path_share_an_edge():
    inst = SimRepInstance([TRIANGLE, PATH], [{"a": 0, "b": 1}, {"a": 0, "b": 1}])
    assert_simultaneous(inst, simrep(inst))
    assert brute_simrep(inst.graphs, inst.maps)


def test_opposite_nestings_conflict():
    inst = SimRepInstance(
        [nested(1), nested(0)],
        [{"a": 0, "b": 1}, {"a": 0, "b": 1}],
    )
    for G in inst.graphs:
        extend(G)
    with pytest.raises(NoSimRep):
        simrep(inst)
    assert not brute_simrep(inst.graphs, inst.maps)


def test_nothing_shared_means_independent_recognition():
    C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert len(simrep(SimRepInstance([TRIANGLE, PATH], [{}, {}]))) == 2
    with pytest.raises(NoSimRep):
        simrep(SimRepInstance([PATH, C4], [{}, {}]))


def test_bound():
    G = Graph(6, [])
    inst = SimRepInstance([G, G], [{c: i for i, c in enumerate("abcdef")}] * 2)
    with pytest.raises(BoundExceeded):
        simrep(inst)
    small = SimRepInstance([PATH, PATH], [{"a": 0, "b": 2}] * 2)
    with pytest.raises(BoundExceeded):
        simrep(small, max_shared=1)


def test_instance_validation():
    with pytest.raises(InvalidInstance):
        SimRepInstance([TRIANGLE, PATH], [{"a": 0, "b": 2}, {"a": 0, "b": 2}])
    with pytest.raises(InvalidInstance):
        SimRepInstance([TRIANGLE], [{"a": 0, "b": 0}])
    with pytest.raises(InvalidInstance):
        SimRepInstance([TRIANGLE, PATH], [{"a": 0}, {"b": 0}])


def test_file_round_trip():
    text = "k 2\nshared a b\ngraph a=0 b=1\n3 3\n0 1\n0 2\n1 2\ngraph a=0 b=1\n3 2\n0 1\n1 2\n"
    inst = load_simrep(text)
    assert inst.shared == ("a", "b") and inst.k == 2
    assert dump_simrep(inst) == text
    with pytest.raises(MalformedLine):
        load_simrep("k 3\nshared a\ngraph a=0\n1 0\n")


def _canon(confs):
    return {tuple(sorted(c.items())) for c in confs}


@given(st.integers(0, 3), st.data())
def test_configurations_match_brute_force(ell, data):
    names = "abc"[:ell]
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]]
    edges = [p for p in pairs if data.draw(st.booleans())]
    adj = {a: {b for p in edges for b in p if a in p and b != a} for a in names}
    got = list(endpoint_configurations(names, adj))
    assert len(_canon(got)) == len(got)
    assert _canon(got) == _canon(brute_simrep_configurations(adj, names))


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_agrees_with_oracle(seed):
    inst = fuzz.random_simrep_instance(random.Random(seed))
    try:
        reps = simrep(inst)
    except NoSimRep:
        reps = None
    assert (reps is not None) == brute_simrep(inst.graphs, inst.maps)
    if reps is not None:
        assert_simultaneous(inst, reps)


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.data())
def test_answer_depends_only_on_endpoint_order(seed, data):
    inst = fuzz.random_simrep_instance(random.Random(seed))
    confs = list(endpoint_configurations(inst.shared, inst.shared_adjacency()))
    conf = data.draw(st.sampled_from(confs))
    classes = 1 + max((r for _, r in conf.values()), default=0)
    gaps = data.draw(st.lists(st.fractions(min_value=Fraction(1, 7), max_value=5), min_size=classes, max_size=classes))
    coord = [sum(gaps[: j + 1]) - 3 for j in range(classes)]
    for G, m in zip(inst.graphs, inst.maps):
        answers = []
        for place in (lambda j: j, coord.__getitem__):
            pre = {m[a]: (place(lo), place(hi)) for a, (lo, hi) in conf.items()}
            try:
                extend(G, pre)
                answers.append(True)
            except NotExtendible:
                answers.append(False)
            except Exception as exc:  # non-interval graphs fail either way
                answers.append(type(exc).__name__)
        assert answers[0] == answers[1]

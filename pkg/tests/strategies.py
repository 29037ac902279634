"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from intervalext.graph_core import Graph, intersection_graph


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def intervals(span=8):
    return st.tuples(st.integers(0, span), st.integers(0, span)).map(lambda t: tuple(sorted(t)))


@st.composite
def interval_families(draw, min_n=1, max_n=7, span=8):
    return draw(st.lists(intervals(span), min_size=min_n, max_size=max_n))


@st.composite
def interval_graphs(draw, min_n=1, max_n=7, span=8):
    """An interval graph together with the family that produced it."""
    fam = draw(interval_families(min_n, max_n, span))
    return intersection_graph(fam), fam


@st.composite
def consecutive_instances(draw, max_elements=7, max_sets=4):
    e = draw(st.integers(1, max_elements))
    elements = list(range(e))
    sets = draw(
        st.lists(
            st.sets(st.sampled_from(elements), min_size=1),
            max_size=max_sets,
        )
    )
    return elements, [sorted(s) for s in sets]

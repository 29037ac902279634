"""Random instances and oracle-agreement checks.

Shared by the ``selfcheck`` command and the test-suite.  Each ``check_*``
function draws one instance from ``rng``, runs the fast solver and the
brute-force oracle on it and returns ``None`` on agreement or a
:class:`Counterexample` carrying instance files that reproduce the failure.

The solvers are looked up as module attributes at call time so a test can
swap one out and watch the check fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle, pq_tree, reorder, repext, simrep
from .errors import (
    Incompatible,
    Infeasible,
    InvalidPartial,
    NoSimRep,
    NotExtendible,
    NotInterval,
)
from .graph_core import ClosedInterval, Graph, check_extension, dump_graph, format_rational

__all__ = [
    "Counterexample",
    "random_graph",
    "random_interval_graph",
    "random_consecutive_instance",
    "random_pq_tree",
    "random_interval_family",
    "random_partial",
    "random_simrep_instance",
    "random_scaling_instance",
    "check_recognition",
    "check_consecutive",
    "check_reorder",
    "check_repext",
    "check_simrep",
    "SUITES",
    "run_selfcheck",
]


@dataclass
class Counterexample:
    suite: str
    message: str
    files: dict[str, str] = field(default_factory=dict)

    def render(self) -> str:
        out = [f"[{self.suite}] {self.message}"]
        for name, text in self.files.items():
            out.append(f"--- {name}")
            out.append(text.rstrip("\n"))
        return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# generators


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_intervals(rng: random.Random, n: int, span: int = 8) -> list[tuple[int, int]]:
    return [tuple(sorted((rng.randint(0, span), rng.randint(0, span)))) for _ in range(n)]


def random_interval_graph(rng: random.Random, n: int, span: int = 8) -> Graph:
    from .graph_core import intersection_graph

    return intersection_graph(random_intervals(rng, n, span))


def random_consecutive_instance(rng: random.Random, max_elements: int = 7, max_sets: int = 4):
    e = rng.randint(1, max_elements)
    elements = list(range(e))
    sets = [rng.sample(elements, rng.randint(1, e)) for _ in range(rng.randint(0, max_sets))]
    return pq_tree.ConsecutiveInstance(elements, sets)


def random_pq_tree(rng: random.Random, max_leaves: int = 7):
    """A PQ-tree built from a random feasible consecutive instance."""
    while True:
        inst = random_consecutive_instance(rng, max_leaves)
        try:
            return pq_tree.build_pq_tree(inst)
        except Infeasible:
            continue


def random_interval_family(rng: random.Random, elements, span: int = 8) -> dict:
    return {x: iv for x, iv in zip(elements, random_intervals(rng, len(elements), span))}


def random_partial(rng: random.Random, G: Graph, max_k: int = 3, lo: int = 0, hi: int = 6) -> dict:
    """Up to ``max_k`` pre-drawn intervals with integer endpoints, valid for ``G``.

    Endpoints are resampled until the pre-drawn intervals represent the
    subgraph they induce.
    """
    k = rng.randint(0, min(max_k, G.n))
    vs = rng.sample(range(G.n), k)
    while True:
        pre = {v: tuple(sorted((rng.randint(lo, hi), rng.randint(lo, hi)))) for v in vs}
        if all(
            (pre[u][0] <= pre[v][1] and pre[v][0] <= pre[u][1]) == G.has_edge(u, v)
            for i, u in enumerate(vs)
            for v in vs[i + 1 :]
        ):
            return pre


def random_simrep_instance(rng: random.Random, max_k: int = 3, max_shared: int = 3, max_n: int = 6):
    """Graphs sharing ``l`` named vertices with identical induced edges.

    The shared vertices get a base interval graph.  Each graph draws fresh
    intervals for them realising the same base graph, adds private
    intervals and shuffles the vertex ids; sometimes the private part is a
    random (possibly non-interval) graph instead.
    """
    k = rng.randint(1, max_k)
    ell = rng.randint(0, max_shared)
    names = [chr(ord("a") + i) for i in range(ell)]
    base = random_intervals(rng, ell)

    def meets(p, q):
        return p[0] <= q[1] and q[0] <= p[1]

    base_edges = {(i, j) for i in range(ell) for j in range(i + 1, ell) if meets(base[i], base[j])}
    graphs, maps = [], []
    for _ in range(k):
        n = rng.randint(ell, max_n)
        while True:
            shared = random_intervals(rng, ell)
            got = {(i, j) for i in range(ell) for j in range(i + 1, ell) if meets(shared[i], shared[j])}
            if got == base_edges:
                break
        perm = list(range(n))
        rng.shuffle(perm)
        if rng.random() < 0.8:
            ivs = shared + random_intervals(rng, n - ell)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n) if meets(ivs[i], ivs[j])]
        else:
            edges = sorted(base_edges) + [
                (i, j) for i in range(n) for j in range(max(i + 1, ell), n) if rng.random() < 0.5
            ]
        graphs.append(Graph(n, [(perm[i], perm[j]) for i, j in edges]))
        maps.append({names[i]: perm[i] for i in range(ell)})
    return simrep.SimRepInstance(graphs, maps)


def random_scaling_instance(n: int, seed=0, fraction: float = 0.2, max_edges_per_vertex: int = 4):
    """A large random interval graph with a sorted partial representation.

    Left endpoints are uniform in ``[0, 10n]`` and lengths in ``[0, 78]``,
    which gives about ``3.9n`` edges; draws with more than
    ``max_edges_per_vertex * n`` edges are rejected.  A ``fraction`` of the
    vertices keep their intervals as the partial representation, returned as
    text listed by left endpoint.
    """
    from .graph_core import intersection_edges

    rng = random.Random(f"{seed}:{n}")
    while True:
        ivs = [(x, x + rng.randint(0, 78)) for x in (rng.randint(0, 10 * n) for _ in range(n))]
        edges = intersection_edges([ClosedInterval(a, b) for a, b in ivs])
        if len(edges) <= max_edges_per_vertex * n:
            break
    pre = sorted(rng.sample(range(n), int(fraction * n)), key=lambda v: ivs[v][0])
    return Graph(n, edges), "".join(f"{v} {ivs[v][0]} {ivs[v][1]}\n" for v in pre)


# ----------------------------------------------------------------------
# checks


def _partial_text(pre: dict) -> str:
    return "".join(
        f"{v} {format_rational(Fraction(a))} {format_rational(Fraction(b))}\n"
        for v, (a, b) in sorted(pre.items(), key=lambda t: (Fraction(t[1][0]), t[0]))
    )


def check_recognition(rng: random.Random, max_n: int = 8):
    n = rng.randint(1, max_n)
    G = random_graph(rng, n, rng.choice((0.2, 0.5, 0.8)))
    try:
        rep = repext.recognize(G)
        got = True
    except NotInterval:
        rep, got = None, False
    want = oracle.brute_interval(G)
    files = {"graph.txt": dump_graph(G)}
    if got != want:
        return Counterexample("recognition", f"recognize says {got}, oracle says {want}", files)
    if rep is not None and check_extension(G, None, rep) is not None:
        return Counterexample("recognition", "output does not represent the graph", files)
    return None


def check_consecutive(rng: random.Random, max_elements: int = 7, max_sets: int = 4):
    inst = random_consecutive_instance(rng, max_elements, max_sets)
    try:
        got = set(pq_tree.enumerate_orderings(pq_tree.build_pq_tree(inst)))
    except Infeasible:
        got = set()
    want = oracle.brute_consecutive(inst.elements, inst.restricting_sets)
    if got != want:
        text = " ".join(map(str, inst.elements)) + "\n"
        text += "".join(" ".join(map(str, sorted(s))) + "\n" for s in inst.restricting_sets)
        return Counterexample(
            "consecutive",
            f"tree has {len(got)} orderings, brute force {len(want)}",
            {"instance.txt": text},
        )
    return None


def check_reorder(rng: random.Random, max_leaves: int = 7):
    T = random_pq_tree(rng, max_leaves)
    elements = list(T.elements)
    orderings = pq_tree.enumerate_orderings(T)
    fam = random_interval_family(rng, elements)
    seq = reorder.SortedEndpointSequence.from_intervals(fam)
    induced = seq.relation()
    arcs = [(a, b) for a in elements for b in elements if a != b and rng.random() < 0.15]
    general = reorder.DigraphOrder(elements, arcs)
    trials = (
        ("reorder_general/interval", reorder.reorder_general, induced, induced),
        ("reorder_interval", reorder.reorder_interval, seq, induced),
        ("reorder_general/random", reorder.reorder_general, general, general),
    )
    for name, fn, arg, relation in trials:
        want = bool(oracle.brute_reorder(orderings, relation.arcs))
        try:
            T2 = fn(T, arg)
            front = tuple(T2.frontier())
            ok = front in orderings and reorder.extends(front, relation)
            got = True
        except Incompatible:
            ok, got = True, False
        if got != want or not ok:
            msg = f"{name}: solver {got}, brute force {want}"
            if not ok:
                msg = f"{name}: returned frontier is not a valid extending ordering"
            files = {
                "tree.txt": T.to_bracket() + "\n",
                "relation.txt": "".join(f"{a} {b}\n" for a, b in relation.arcs),
            }
            return Counterexample("reorder", msg, files)
    return None


def check_repext(rng: random.Random, max_n: int = 7, max_k: int = 3):
    n = rng.randint(1, max_n)
    if rng.random() < 0.5:
        G = random_interval_graph(rng, n)
    else:
        G = random_graph(rng, n, rng.choice((0.2, 0.5, 0.8)))
    pre = random_partial(rng, G, max_k)
    files = {"graph.txt": dump_graph(G), "partial.txt": _partial_text(pre)}
    try:
        rep = repext.extend(G, pre)
        got = True
    except (NotInterval, NotExtendible):
        rep, got = None, False
    except InvalidPartial as exc:
        return Counterexample("repext", f"valid partial rejected: {exc}", files)
    want = oracle.brute_extend(G, pre)
    if got != want:
        return Counterexample("repext", f"extend says {got}, oracle says {want}", files)
    if rep is not None:
        reason = check_extension(G, {v: ClosedInterval(a, b) for v, (a, b) in pre.items()}, rep)
        if reason is not None:
            return Counterexample("repext", f"output fails verification: {reason}", files)
    return None


def check_simrep(rng: random.Random):
    inst = random_simrep_instance(rng)
    files = {"instance.txt": simrep.dump_simrep(inst)}
    try:
        reps = simrep.simrep(inst)
        got = True
    except NoSimRep:
        reps, got = None, False
    want = oracle.brute_simrep(inst.graphs, inst.maps)
    if got != want:
        return Counterexample("simrep", f"simrep says {got}, oracle says {want}", files)
    if reps is not None:
        for G, rep in zip(inst.graphs, reps):
            if check_extension(G, None, rep) is not None:
                return Counterexample("simrep", "an output does not represent its graph", files)
        for a in inst.shared:
            placed = {(rep[m[a]].left, rep[m[a]].right) for rep, m in zip(reps, inst.maps)}
            if len(placed) != 1:
                return Counterexample("simrep", f"shared vertex {a} drawn differently", files)
    return None


SUITES = {
    "recognition": check_recognition,
    "consecutive": check_consecutive,
    "reorder": check_reorder,
    "repext": check_repext,
    "simrep": check_simrep,
}


def run_selfcheck(seed: int = 0, iters: int = 100, suites=None, report=None) -> list[Counterexample]:
    """Run every suite ``iters`` times; returns the counterexamples found.

    Each suite stops at its first disagreement.  ``report(name, passed,
    iters)`` is called once per suite when given.
    """
    failures = []
    for name in suites or SUITES:
        check = SUITES[name]
        rng = random.Random(f"{seed}:{name}")
        passed = 0
        for _ in range(iters):
            cx = check(rng)
            if cx is not None:
                failures.append(cx)
                break
            passed += 1
        if report is not None:
            report(name, passed, iters)
    return failures

"""
How extend scales
=================

Random interval graphs with a fifth of the vertices pre-drawn, listed by
left endpoint.  Pass sizes on the command line, e.g. ``1000 10000 100000``.
"""

import sys
import time

from intervalext.fuzz import random_scaling_instance
from intervalext.repext import extend, load_partial

sizes = [int(a) for a in sys.argv[1:]] or [1000, 10000]
previous = None
for n in sizes:
    G, text = random_scaling_instance(n, seed=1)
    partial = load_partial(G, text, assume_sorted=True)
    runs = []
    for _ in range(3):
        t0 = time.perf_counter()
        extend(G, partial)
        runs.append(time.perf_counter() - t0)
    best = min(runs)
    ratio = f"  x{best / previous:.1f}" if previous else ""
    print(f"n={n:>7}  m={G.m:>7}  {best:.3f}s{ratio}")
    previous = best

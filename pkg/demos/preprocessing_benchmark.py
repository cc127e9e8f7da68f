"""Relative preprocessing cost of the descriptor kinds.

Times one full pass of each per-edge descriptor over an identical synthetic
corpus (per-edge computation is self-contained, no caching).  The expected
ordering: node/edge counting is cheapest, the path-matrix singular-value sum
costs a bit more, exact-transport curvature costs several times that, and
6-cycle counting dwarfs them all.
"""

import json
import random

from unionsub.cli import BENCH_KINDS, run_bench
from unionsub.graphs import random_graph

rng = random.Random(0)
corpus = [random_graph(rng.randint(20, 40), 3.7 / 29, rng) for _ in range(30)]
print(f"corpus: {len(corpus)} graphs, {sum(g.num_edges for g in corpus)} edges")

report = run_bench(corpus, list(BENCH_KINDS), repeats=3)
print(json.dumps(report, indent=2))

print("\nmedian seconds per kind:")
for kind, stats in sorted(report["kinds"].items(), key=lambda kv: kv[1]["seconds"]):
    print(f"  {kind:14s} {stats['seconds']:8.3f}s   {stats['us_per_edge']:10.1f} us/edge")

"""Per-edge local substructures and neighborhood isomorphism tests.

For an edge (v, u): the overlap subgraph intersects the two closed
neighborhoods, the union-minus subgraph unions them as graphs, and the union
subgraph induces on the unioned node set (capturing cross-exclusive edges
that the graph union misses).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import (
    Graph,
    GraphError,
    Subgraph,
    closed_neighborhood,
    induced_subgraph,
    is_isomorphic_small,
)

NEIGHBORHOOD_ISO_LIMIT = 9  # bijection enumeration bound on |closed neighborhood|


def _require_edge(g, v, u):
    if not g.has_edge(v, u):
        raise GraphError(f"({v}, {u}) is not an edge")


def union_subgraph(g, v, u):
    """Induced subgraph on the union of the closed neighborhoods of v and u."""
    _require_edge(g, v, u)
    return induced_subgraph(g, closed_neighborhood(g, v) | closed_neighborhood(g, u))


def overlap_subgraph(g, v, u):
    """Graph intersection of the closed-neighborhood subgraphs of v and u."""
    _require_edge(g, v, u)
    sv = induced_subgraph(g, closed_neighborhood(g, v))
    su = induced_subgraph(g, closed_neighborhood(g, u))
    nodes = set(sv.parent_ids) & set(su.parent_ids)
    shared = set(sv.parent_edges()) & set(su.parent_edges())
    parent_ids = sorted(nodes)
    index = {p: i for i, p in enumerate(parent_ids)}
    local = Graph(len(parent_ids), [(index[a], index[b]) for a, b in shared])
    return Subgraph(local, parent_ids)


def union_minus_subgraph(g, v, u):
    """Graph union of the closed-neighborhood subgraphs of v and u.

    Same node set as the union subgraph, but edges between exclusive
    neighbors on opposite sides (type E3) are absent.
    """
    _require_edge(g, v, u)
    sv = induced_subgraph(g, closed_neighborhood(g, v))
    su = induced_subgraph(g, closed_neighborhood(g, u))
    nodes = set(sv.parent_ids) | set(su.parent_ids)
    merged = set(sv.parent_edges()) | set(su.parent_edges())
    parent_ids = sorted(nodes)
    index = {p: i for i, p in enumerate(parent_ids)}
    local = Graph(len(parent_ids), [(index[a], index[b]) for a, b in merged])
    return Subgraph(local, parent_ids)


@dataclass(frozen=True)
class EdgeTypePartition:
    """The four neighbor-edge classes of an edge's closed neighborhood.

    e1: common-common, e2: common-exclusive, e3: cross-exclusive,
    e4: same-side exclusive.  Edges incident to v or u (including (v, u)
    itself) are reported separately as spokes.
    """

    e1: frozenset
    e2: frozenset
    e3: frozenset
    e4: frozenset
    spokes: frozenset

    def all_classified(self):
        return self.e1 | self.e2 | self.e3 | self.e4 | self.spokes


def classify_edge_types(g, v, u):
    """Partition the union subgraph's edges into E1..E4 plus spokes."""
    _require_edge(g, v, u)
    nv = closed_neighborhood(g, v)
    nu = closed_neighborhood(g, u)
    common = nv & nu
    excl_v = nv - common
    excl_u = nu - common
    e1, e2, e3, e4, spokes = set(), set(), set(), set(), set()
    for a, b in union_subgraph(g, v, u).parent_edges():
        if v in (a, b) or u in (a, b):
            spokes.add((a, b))
        elif a in common and b in common:
            e1.add((a, b))
        elif (a in common) != (b in common):
            e2.add((a, b))
        elif (a in excl_v and b in excl_u) or (a in excl_u and b in excl_v):
            e3.add((a, b))
        else:
            e4.add((a, b))
    return EdgeTypePartition(
        frozenset(e1), frozenset(e2), frozenset(e3), frozenset(e4), frozenset(spokes)
    )


# ---------------------------------------------------------------------------
# Union / overlap isomorphism of node neighborhoods
# ---------------------------------------------------------------------------

def _neighborhood_isomorphic(g1, i, g2, j, local_subgraph):
    """Shared engine: exists a bijection g: Ñ(i)→Ñ(j) with g(i)=j such that
    local_subgraph(g1, i, v) ≅ local_subgraph(g2, j, g(v)) for every v ∈ N(i).
    """
    ni = closed_neighborhood(g1, i)
    nj = closed_neighborhood(g2, j)
    if len(ni) != len(nj):
        return False
    if len(ni) > NEIGHBORHOOD_ISO_LIMIT:
        raise GraphError(
            f"neighborhood isomorphism bound is {NEIGHBORHOOD_ISO_LIMIT} nodes"
        )
    left = sorted(ni - {i})
    right = sorted(nj - {j})
    # compatibility via pairwise ordinary isomorphism of the local subgraphs
    subs_left = [local_subgraph(g1, i, v) for v in left]
    subs_right = [local_subgraph(g2, j, w) for w in right]
    compatible = [
        [is_isomorphic_small(sl, sr) for sr in subs_right] for sl in subs_left
    ]
    used = [False] * len(right)

    def assign(k):
        if k == len(left):
            return True
        for w in range(len(right)):
            if not used[w] and compatible[k][w]:
                used[w] = True
                if assign(k + 1):
                    return True
                used[w] = False
        return False

    return assign(0)


def union_isomorphic(g1, i, g2, j):
    """Neighborhood equivalence through per-neighbor union subgraphs."""
    return _neighborhood_isomorphic(g1, i, g2, j, union_subgraph)


def overlap_isomorphic(g1, i, g2, j):
    """Neighborhood equivalence through per-neighbor overlap subgraphs."""
    return _neighborhood_isomorphic(g1, i, g2, j, overlap_subgraph)

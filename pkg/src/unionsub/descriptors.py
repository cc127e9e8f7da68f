"""Per-edge structural descriptors, matrix encodings, and coefficient tables.

The flagship descriptor turns an edge's union subgraph into its shortest-path
matrix and encodes it as the singular-value sum (nuclear norm).  Rival
descriptors (edge betweenness, node/edge count, Ollivier-Ricci curvature with
exact optimal transport, Laplacian spectrum, cycle counting) share the same
coefficient-table plumbing so they can be swapped per edge.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import (
    Graph,
    GraphError,
    Subgraph,
    bfs_distances,
    closed_neighborhood,
    count_simple_cycles,
)
from .linalg import max_abs_eigenvalue, nuclear_norm_symmetric
from .substructure import overlap_subgraph, union_minus_subgraph, union_subgraph
from .transport import wasserstein_discrete

NORMALIZATION_ZERO_TOL = 1e-12


class DescriptorError(ValueError):
    """A descriptor could not be evaluated; carries edge identity when known."""


class Encoding(enum.Enum):
    """How a symmetric descriptor matrix is reduced to a scalar."""

    MATRIX_SUM = "matrix-sum"
    EIGEN_MAX = "eigen-max"
    SVD_SUM = "svd-sum"

    @classmethod
    def parse(cls, text):
        for member in cls:
            if member.value == text:
                return member
        raise DescriptorError(f"unknown encoding {text!r}")


@dataclass(frozen=True)
class Descriptor:
    """A per-edge descriptor kind with its parameters.

    lam applies to count-ne (1 for node-level, 2 for graph-level use),
    alpha to curvature (laziness of the random walk), cycle_len to
    cycle-count (which is graph-global and excluded from coefficient tables).
    """

    kind: str
    lam: int = 2
    alpha: float = 0.5
    cycle_len: int = 6

    MATRIX_KINDS = ("union-path", "overlap-path", "minus-path", "laplacian")
    SCALAR_KINDS = ("betweenness", "count-ne", "curvature")
    KINDS = MATRIX_KINDS + SCALAR_KINDS + ("cycle-count",)

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DescriptorError(f"unknown descriptor kind {self.kind!r}")
        if self.lam not in (1, 2):
            raise DescriptorError("count-ne lambda must be 1 or 2")
        if not 0.0 <= self.alpha < 1.0:
            raise DescriptorError("curvature alpha must lie in [0, 1)")
        if not 3 <= self.cycle_len <= 8:
            raise DescriptorError("cycle length must lie in 3..8")

    @classmethod
    def parse(cls, text):
        """Parse strings like "union-path", "count-ne:1", "cycle-count:6"."""
        kind, _, param = text.partition(":")
        if not param:
            return cls(kind)
        try:
            if kind == "count-ne":
                return cls(kind, lam=int(param))
            if kind == "curvature":
                return cls(kind, alpha=float(param))
            if kind == "cycle-count":
                return cls(kind, cycle_len=int(param))
        except ValueError:
            raise DescriptorError(f"invalid parameter in {text!r}") from None
        raise DescriptorError(f"descriptor {kind!r} takes no parameter")


UNION_PATH_SVD = Descriptor("union-path")
OVERLAP_PATH_SVD = Descriptor("overlap-path")
MINUS_PATH_SVD = Descriptor("minus-path")
BETWEENNESS = Descriptor("betweenness")
COUNT_NE = Descriptor("count-ne")
RICCI_CURVATURE = Descriptor("curvature")
LAPLACIAN_SVD = Descriptor("laplacian")


# ---------------------------------------------------------------------------
# Path matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathMatrix:
    """All-pairs shortest-path lengths of one subgraph.

    Rows and columns follow ``order`` (parent ids ascending).  An entry is 1
    exactly when the corresponding local edge exists, which is what makes the
    subgraph reconstructible.
    """

    entries: np.ndarray
    order: tuple

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def dim(self):
        return len(self.order)

    def __eq__(self, other):
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.entries, other.entries)


def path_matrix(s):
    """Shortest-path matrix of a connected subgraph via all-pairs BFS."""
    g = s.local
    n = g.num_nodes
    entries = np.zeros((n, n), dtype=int)
    for v in range(n):
        dist = bfs_distances(g, v)
        if min(dist, default=0) < 0:
            raise DescriptorError("subgraph is disconnected; path matrix undefined")
        entries[v] = dist
    return PathMatrix(entries, tuple(s.parent_ids))


def reconstruct_subgraph(p):
    """Invert path_matrix: edges are exactly the distance-1 entries."""
    entries = np.asarray(p.entries)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DescriptorError("path matrix must be square")
    if (entries < 0).any():
        raise DescriptorError("path matrix entries must be non-negative")
    if not np.array_equal(entries, entries.T):
        raise DescriptorError("path matrix must be symmetric")
    if np.diag(entries).any():
        raise DescriptorError("path matrix diagonal must be zero")
    n = entries.shape[0]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if entries[i, j] == 1]
    return Subgraph(Graph(n, edges), p.order)


def encode_matrix(matrix, encoding):
    """Reduce a square matrix to a scalar per the chosen encoding."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DescriptorError("encoding requires a square matrix")
    if not np.isfinite(m).all():
        raise DescriptorError("matrix entries must be finite")
    if encoding is Encoding.MATRIX_SUM:
        return float(m.sum())
    try:
        if encoding is Encoding.EIGEN_MAX:
            return max_abs_eigenvalue(m)
        if encoding is Encoding.SVD_SUM:
            return nuclear_norm_symmetric(m)
    except ValueError as exc:
        raise DescriptorError(str(exc)) from None
    raise DescriptorError(f"unknown encoding {encoding!r}")


def laplacian_matrix(s):
    """Combinatorial Laplacian D - A of a subgraph's local graph."""
    g = s.local
    n = g.num_nodes
    lap = np.zeros((n, n))
    for i, j in g.edges:
        lap[i, j] = lap[j, i] = -1.0
    for v in range(n):
        lap[v, v] = g.degree(v)
    return lap


# ---------------------------------------------------------------------------
# Rival descriptors
# ---------------------------------------------------------------------------

def _local_graph_and_edge(s, v, u):
    if isinstance(s, Subgraph):
        return s.local, s.local_index(v), s.local_index(u)
    return s, v, u


def edge_betweenness_descriptor(s, v, u):
    """Fraction of all-pairs shortest paths passing through edge (v, u).

    Pairs are unordered and include the endpoints' own pair, which always
    contributes 1 through its own edge.
    """
    g, a, b = _local_graph_and_edge(s, v, u)
    if not g.has_edge(a, b):
        raise DescriptorError(f"({v}, {u}) is not an edge of the subgraph")
    n = g.num_nodes
    dist = []
    sigma = []
    for src in range(n):
        d = bfs_distances(g, src)
        if min(d) < 0:
            raise DescriptorError("betweenness requires a connected subgraph")
        counts = [0] * n
        counts[src] = 1
        for x in sorted(range(n), key=d.__getitem__):
            for y in g.neighbors(x):
                if d[y] == d[x] + 1:
                    counts[y] += counts[x]
        dist.append(d)
        sigma.append(counts)
    total = 0.0
    for x in range(n):
        for y in range(x + 1, n):
            through = 0
            if dist[x][a] + 1 + dist[b][y] == dist[x][y]:
                through += sigma[x][a] * sigma[b][y]
            if dist[x][b] + 1 + dist[a][y] == dist[x][y]:
                through += sigma[x][b] * sigma[a][y]
            total += through / sigma[x][y]
    return total


def count_ne_descriptor(s, lam=2):
    """Edge-density times node-count power: |E| / (|V|(|V|-1)) * |V|**lam."""
    if lam not in (1, 2):
        raise DescriptorError("lambda must be 1 or 2")
    g = s.local if isinstance(s, Subgraph) else s
    n = g.num_nodes
    if n < 2:
        raise DescriptorError("count-ne needs at least 2 nodes")
    return g.num_edges / (n * (n - 1)) * n ** lam


def ricci_curvature(g, v, u, alpha=0.5):
    """Lazy-random-walk Ricci curvature of an edge, with exact transport.

    Each endpoint keeps mass alpha and spreads (1 - alpha) uniformly over
    its neighbors; the curvature is 1 - W(mu_v, mu_u) / d(v, u) with d = 1
    for adjacent nodes.  Supports and ground distances live in the full
    graph, not the union subgraph.
    """
    if not 0.0 <= alpha < 1.0:
        raise DescriptorError("alpha must lie in [0, 1)")
    if not g.has_edge(v, u):
        raise DescriptorError(f"({v}, {u}) is not an edge")
    support_v = sorted(closed_neighborhood(g, v))
    support_u = sorted(closed_neighborhood(g, u))

    def mass(center, node):
        if node == center:
            return alpha
        return (1.0 - alpha) / g.degree(center)

    mu = np.array([mass(v, x) for x in support_v])
    nu = np.array([mass(u, y) for y in support_u])
    ground = np.empty((len(support_v), len(support_u)))
    for i, x in enumerate(support_v):
        dist = bfs_distances(g, x)
        for j, y in enumerate(support_u):
            if dist[y] < 0:
                raise DescriptorError("supports are not mutually reachable")
            ground[i, j] = dist[y]
    wass = wasserstein_discrete(mu, nu, ground)
    return 1.0 - wass / 1.0


def cycle_count(g, k):
    """Number of simple k-cycles in the whole graph, 3 <= k <= 8."""
    if not 3 <= k <= 8:
        raise DescriptorError("cycle length must lie in 3..8")
    return count_simple_cycles(g, k)


# ---------------------------------------------------------------------------
# Coefficient tables
# ---------------------------------------------------------------------------

@dataclass
class CoefficientTable:
    """Raw per-edge coefficients plus per-directed-pair normalized weights.

    ``raw`` is keyed by unordered edges (min, max); ``normalized`` by ordered
    pairs (v, u) with sum_{u in N(v)} normalized[(v, u)] = 1 for every
    non-isolated v.
    """

    raw: dict
    normalized: dict

    def raw_value(self, v, u):
        return self.raw[(v, u) if v < u else (u, v)]

    def normalized_value(self, v, u):
        return self.normalized[(v, u)]

    def raw_multiset(self, scale=1e9):
        """Sorted tuple of quantized raw values (labeling-independent view)."""
        return tuple(sorted(round(x * scale) for x in self.raw.values()))

    def to_json_obj(self):
        return {
            "raw": [[v, u, val] for (v, u), val in sorted(self.raw.items())],
            "normalized": [
                [v, u, val] for (v, u), val in sorted(self.normalized.items())
            ],
        }

    def to_csv_text(self):
        lines = ["v,u,raw,norm_vu,norm_uv"]
        for (v, u), val in sorted(self.raw.items()):
            lines.append(
                f"{v},{u},{val:.12g},"
                f"{self.normalized[(v, u)]:.12g},{self.normalized[(u, v)]:.12g}"
            )
        return "\n".join(lines) + "\n"


def edge_descriptor_value(g, v, u, kind, encoding=Encoding.SVD_SUM):
    """Raw descriptor value of one edge; self-contained per edge (no caching)."""
    if kind.kind == "union-path":
        return encode_matrix(path_matrix(union_subgraph(g, v, u)).entries, encoding)
    if kind.kind == "overlap-path":
        return encode_matrix(path_matrix(overlap_subgraph(g, v, u)).entries, encoding)
    if kind.kind == "minus-path":
        return encode_matrix(
            path_matrix(union_minus_subgraph(g, v, u)).entries, encoding
        )
    if kind.kind == "laplacian":
        return encode_matrix(laplacian_matrix(union_subgraph(g, v, u)), encoding)
    if kind.kind == "betweenness":
        return edge_betweenness_descriptor(union_subgraph(g, v, u), v, u)
    if kind.kind == "count-ne":
        return count_ne_descriptor(union_subgraph(g, v, u), kind.lam)
    if kind.kind == "curvature":
        return ricci_curvature(g, v, u, kind.alpha)
    raise DescriptorError(f"{kind.kind!r} has no per-edge value")


def coefficient_table(g, kind=UNION_PATH_SVD, encoding=Encoding.SVD_SUM):
    """Raw and normalized structural coefficients for every edge of g.

    Deterministic regardless of node labeling.  cycle-count is graph-global
    and rejected here (it exists for the preprocessing benchmark only).
    """
    if kind.kind == "cycle-count":
        raise DescriptorError("cycle-count is graph-global, not a per-edge kind")
    raw = {}
    for v, u in g.edges:
        try:
            raw[(v, u)] = float(edge_descriptor_value(g, v, u, kind, encoding))
        except (DescriptorError, GraphError, RuntimeError) as exc:
            raise DescriptorError(f"edge ({v}, {u}): {exc}") from exc
    normalized = {}
    for v in range(g.num_nodes):
        neighbors = g.neighbors(v)
        if not neighbors:
            continue
        denom = sum(raw[(v, u) if v < u else (u, v)] for u in neighbors)
        if abs(denom) < NORMALIZATION_ZERO_TOL:
            warnings.warn(
                f"coefficients around node {v} sum to ~0; "
                "falling back to uniform weights",
                RuntimeWarning,
                stacklevel=2,
            )
            for u in neighbors:
                normalized[(v, u)] = 1.0 / len(neighbors)
        else:
            for u in neighbors:
                normalized[(v, u)] = raw[(v, u) if v < u else (u, v)] / denom
    return CoefficientTable(raw=raw, normalized=normalized)

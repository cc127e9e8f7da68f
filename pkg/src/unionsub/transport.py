"""Exact solver for small balanced transportation problems.

Classic transportation simplex: northwest-corner start, potentials from the
spanning-tree basis, most-negative reduced cost entering, stepping-stone
pivot.  Instances here are tiny (supports of probability distributions), so
no sparsity tricks are needed.
"""

from __future__ import annotations

import numpy as np

PIVOT_TOL = 1e-12


class TransportError(RuntimeError):
    """Solver failed to terminate; impossible for valid balanced instances."""


def solve_transport(supply, demand, cost):
    """Minimize sum(cost * plan) over nonnegative plans with given marginals.

    Returns (plan, objective).  Supply and demand must balance to within
    1e-9; the residual is folded into the last demand entry so the simplex
    sees an exactly balanced instance.
    """
    a = np.asarray(supply, dtype=float).copy()
    b = np.asarray(demand, dtype=float).copy()
    c = np.asarray(cost, dtype=float)
    m, n = c.shape
    if a.shape != (m,) or b.shape != (n,):
        raise ValueError("cost shape must be (len(supply), len(demand))")
    if (a < -1e-12).any() or (b < -1e-12).any():
        raise ValueError("supplies and demands must be non-negative")
    imbalance = a.sum() - b.sum()
    if abs(imbalance) > 1e-9:
        raise ValueError(f"unbalanced instance (residual {imbalance:.3e})")
    b[-1] += imbalance

    plan = np.zeros((m, n))
    basis = set()
    # northwest-corner initial basic feasible solution: exactly m+n-1 cells
    i = j = 0
    remaining_a = a.copy()
    remaining_b = b.copy()
    while True:
        basis.add((i, j))
        amount = min(remaining_a[i], remaining_b[j])
        plan[i, j] = amount
        remaining_a[i] -= amount
        remaining_b[j] -= amount
        if i == m - 1 and j == n - 1:
            break
        if i < m - 1 and (remaining_a[i] <= remaining_b[j] or j == n - 1):
            i += 1
        else:
            j += 1

    max_iter = 200 * (m + n) * max(m, n)
    for _ in range(max_iter):
        u, v = _potentials(m, n, c, basis)
        entering = None
        best = -PIVOT_TOL
        for r in range(m):
            for s in range(n):
                if (r, s) in basis:
                    continue
                reduced = c[r, s] - u[r] - v[s]
                if reduced < best:
                    best = reduced
                    entering = (r, s)
        if entering is None:
            objective = float((plan * c).sum())
            return plan, objective
        cycle = _find_cycle(basis, entering)
        # odd positions along the cycle lose flow
        minus_cells = cycle[1::2]
        theta = min(plan[cell] for cell in minus_cells)
        leaving = min(
            (cell for cell in minus_cells if plan[cell] <= theta + 1e-15),
        )
        for idx, cell in enumerate(cycle):
            plan[cell] += theta if idx % 2 == 0 else -theta
        plan[leaving] = 0.0
        basis.remove(leaving)
        basis.add(entering)
    raise TransportError("transportation simplex exceeded its iteration cap")


def _potentials(m, n, c, basis):
    """Solve u_i + v_j = c_ij on the basis tree, rooted at u_0 = 0."""
    u = [None] * m
    v = [None] * n
    u[0] = 0.0
    by_row = {}
    by_col = {}
    for (i, j) in basis:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    stack = [("r", 0)]
    while stack:
        kind, idx = stack.pop()
        if kind == "r":
            for j in by_row.get(idx, ()):
                if v[j] is None:
                    v[j] = c[idx, j] - u[idx]
                    stack.append(("c", j))
        else:
            for i in by_col.get(idx, ()):
                if u[i] is None:
                    u[i] = c[i, idx] - v[idx]
                    stack.append(("r", i))
    if any(x is None for x in u) or any(x is None for x in v):
        raise TransportError("basis is not a spanning tree")
    return u, v


def _find_cycle(basis, entering):
    """Unique alternating cycle formed by the basis tree plus the entering cell.

    Returned as a cell list starting at the entering cell, alternating
    row-moves and column-moves; even positions gain flow, odd positions lose.
    """
    i0, j0 = entering
    by_row = {}
    by_col = {}
    for (i, j) in basis:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)

    # path from row i0 to column j0 through basis cells
    def search(kind, idx, target, visited, path):
        if kind == "c" and idx == target:
            return path
        if kind == "r":
            for j in by_row.get(idx, ()):
                if ("c", j) not in visited:
                    found = search(
                        "c", j, target, visited | {("c", j)}, path + [(idx, j)]
                    )
                    if found is not None:
                        return found
        else:
            for i in by_col.get(idx, ()):
                if ("r", i) not in visited:
                    found = search(
                        "r", i, target, visited | {("r", i)}, path + [(i, idx)]
                    )
                    if found is not None:
                        return found
        return None

    path = search("r", i0, j0, {("r", i0)}, [])
    if path is None:
        raise TransportError("entering cell closes no cycle; basis corrupt")
    return [entering] + path


def wasserstein_discrete(mu, nu, distances):
    """Exact 1-Wasserstein distance between small discrete distributions.

    ``distances[i, j]`` is the ground metric between support point i of mu
    and support point j of nu.  Zero-mass support points are dropped first.
    """
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    distances = np.asarray(distances, dtype=float)
    keep_i = np.nonzero(mu > 0)[0]
    keep_j = np.nonzero(nu > 0)[0]
    if keep_i.size == 0 or keep_j.size == 0:
        raise ValueError("distributions must carry positive mass")
    _, objective = solve_transport(
        mu[keep_i], nu[keep_j], distances[np.ix_(keep_i, keep_j)]
    )
    return objective

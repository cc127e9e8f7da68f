"""Cyclic Jacobi eigensolver for small symmetric matrices.

Singular values of a symmetric matrix are the absolute eigenvalues, so the
nuclear norm (singular-value sum) never needs a general bidiagonalization.
"""

from __future__ import annotations

import math

import numpy as np

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal norm fell below tolerance."""


def _off_diagonal_norm(a):
    # sum off-diagonal squares directly; total**2 - diag**2 cancels badly
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return math.sqrt((off * off).sum())


def jacobi_eigenvalues(matrix, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps the upper triangle in row order, annihilating each off-diagonal
    entry, until the off-diagonal Frobenius norm is at most ``tol``.
    Returns the eigenvalues sorted ascending.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n == 0:
        return np.array([])
    if not np.allclose(a, a.T, atol=1e-9):
        raise ValueError("matrix must be symmetric")
    a = (a + a.T) / 2.0
    if n == 1:
        return a[0].copy()
    scale = max(1.0, float(np.abs(a).max()))
    skip = 1e-300 * scale  # only avoids division by an exact zero pivot
    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) <= tol:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if abs(apq) <= skip:
                    a[p, q] = a[q, p] = 0.0
                    continue
                # symmetric Schur rotation zeroing a[p, q]
                tau = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                a[:, p] = new_p
                a[:, q] = new_q
                a[p, :] = new_p
                a[q, :] = new_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
    if _off_diagonal_norm(a) <= tol:
        return np.sort(np.diag(a))
    raise ConvergenceError(
        f"Jacobi did not converge within {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
    )


def nuclear_norm_symmetric(matrix, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Sum of singular values of a symmetric matrix (= sum of |eigenvalues|)."""
    return float(np.abs(jacobi_eigenvalues(matrix, tol, max_sweeps)).sum())


def max_abs_eigenvalue(matrix, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Largest-magnitude eigenvalue's absolute value, for symmetric input."""
    eig = jacobi_eigenvalues(matrix, tol, max_sweeps)
    return float(np.abs(eig).max()) if eig.size else 0.0

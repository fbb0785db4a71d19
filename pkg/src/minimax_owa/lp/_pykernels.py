"""Pure numpy tableau kernels, used when the compiled extension is missing.

Tableau layout shared with ``_ckernels.pyx``: one row per constraint, the
last column is the right-hand side. The cost row is kept separately.
"""
from __future__ import annotations

import numpy as np


def pivot(T: np.ndarray, cost: np.ndarray, r: int, c: int) -> None:
    """Pivot in place on entry (r, c), updating the cost row as well."""
    prow = T[r]
    prow *= 1.0 / prow[c]
    col = T[:, c].copy()
    col[r] = 0.0
    nz = np.flatnonzero(col)
    if nz.size:
        T[nz] -= np.outer(col[nz], prow)
        T[nz, c] = 0.0
    prow[c] = 1.0
    f = cost[c]
    if f != 0.0:
        cost -= f * prow
        cost[c] = 0.0


def ratio_test(T: np.ndarray, c: int, basis: np.ndarray, tol: float, bland: bool = True) -> int:
    """Leaving row for entering column c, or -1 if the column is unbounded.

    Ties on the minimum ratio go to the smallest basic variable index when
    ``bland`` is set (needed against cycling), else to the largest pivot.
    """
    col = T[:, c]
    rows = np.flatnonzero(col > tol)
    if rows.size == 0:
        return -1
    ratios = T[rows, -1] / col[rows]
    best = ratios.min()
    ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
    if bland:
        return int(ties[np.argmin(basis[ties])])
    return int(ties[np.argmax(col[ties])])


def entering_bland(cost: np.ndarray, allowed: np.ndarray, tol: float) -> int:
    idx = np.flatnonzero((cost[:-1] < -tol) & allowed)
    return int(idx[0]) if idx.size else -1


def entering_dantzig(cost: np.ndarray, allowed: np.ndarray, tol: float) -> int:
    masked = np.where(allowed, cost[:-1], 0.0)
    c = int(np.argmin(masked))
    return c if masked[c] < -tol else -1

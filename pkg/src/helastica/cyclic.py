"""Cyclic (periodic) banded linear solves.

A periodic band matrix is a band matrix plus corner blocks that wrap the
band around the ends.  ``solve_cyclic_banded`` handles it with one banded
factorization and a small Woodbury correction: solve without the corners,
solve for unit loads on the wrap-affected rows, then combine.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

__all__ = ["solve_cyclic_banded", "cyclic_banded_matvec"]


def _corner_rows(n: int, l_and_u: tuple[int, int]) -> list[int]:
    l, u = l_and_u
    return list(range(l)) + list(range(n - u, n))


def solve_cyclic_banded(l_and_u: tuple[int, int], diagonals: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b for a periodic banded A.

    Parameters
    ----------
    l_and_u : (l, u)
        Number of sub- and superdiagonals.
    diagonals : (l + u + 1, n) array
        Row-wise bands with periodic column index:
        ``diagonals[u - o, i]`` is the entry ``A[i, (i + o) % n]`` for
        offsets o = u, ..., -l (same row ordering as scipy's solve_banded).
    b : (n,) or (n, k) right-hand side(s).

    Returns
    -------
    x with the shape of b.
    """
    l, u = l_and_u
    diagonals = np.asarray(diagonals, dtype=float)
    nbands, n = diagonals.shape
    if nbands != l + u + 1:
        raise ValueError(f"expected {l + u + 1} bands, got {nbands}")
    if l + u >= n:
        raise ValueError("bandwidth must be smaller than the matrix size")

    # Band storage for the non-wrapped part: A[i, i+o] sits at ab[u-o, i+o].
    ab = np.zeros((nbands, n))
    wrap_rows = _corner_rows(n, l_and_u)
    corners = np.zeros((len(wrap_rows), n))
    idx = np.arange(n)
    for o in range(-l, u + 1):
        vals = diagonals[u - o]
        cols = idx + o
        inside = (cols >= 0) & (cols < n)
        ab[u - o, cols[inside]] = vals[inside]
        for k, i in enumerate(wrap_rows):
            if not (0 <= i + o < n):
                corners[k, (i + o) % n] = vals[i]

    b = np.asarray(b, dtype=float)
    b2 = b if b.ndim == 2 else b[:, None]
    y = solve_banded(l_and_u, ab, b2)

    unit = np.zeros((n, len(wrap_rows)))
    for k, i in enumerate(wrap_rows):
        unit[i, k] = 1.0
    z = solve_banded(l_and_u, ab, unit)
    cap = np.eye(len(wrap_rows)) + corners @ z
    x = y - z @ np.linalg.solve(cap, corners @ y)
    return x if b.ndim == 2 else x[:, 0]


def cyclic_banded_matvec(l_and_u: tuple[int, int], diagonals: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Multiply the periodic banded matrix described by ``diagonals`` with x."""
    l, u = l_and_u
    out = np.zeros_like(x, dtype=float)
    for o in range(-l, u + 1):
        vals = diagonals[u - o]
        shifted = np.roll(x, -o, axis=0)
        out += (vals[:, None] if x.ndim == 2 else vals) * shifted
    return out

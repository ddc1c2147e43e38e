"""Epigraph/hypograph indices of a sample of curves.

Integrals over the domain use the trapezoid weights of the observation grid,
both for the area-based indices and for the Lebesgue measure in the modified
indices. Each curve is compared against every sample curve, itself included.
"""

from __future__ import annotations

import numpy as np

from .core import Grid, ValidationError
from .smoothing import SmoothedTriple

__all__ = [
    "FEATURE_COLUMNS",
    "modified_indices",
    "area_indices",
    "reflection_check",
    "feature_matrix",
]

FEATURE_COLUMNS = ("ABEI_d0", "ABHI_d0", "ABEI_d1", "ABHI_d1", "ABEI_d2", "ABHI_d2")

# elements of the (chunk, n, m) difference tensor held at once
_CHUNK_ELEMENTS = 1 << 22


def _check(values, grid: Grid) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[1] != len(grid):
        raise ValidationError(
            f"expected an (n, {len(grid)}) matrix, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise ValidationError("index input contains non-finite values")
    return values


def _row_chunks(n, m):
    step = max(1, _CHUNK_ELEMENTS // max(1, n * m))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


def area_indices(values, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Area-based epigraph and hypograph indices (ABEI, ABHI) of each curve.

    ``ABEI[k] = sum_i  int (x_i - x_k)_+ dt`` and
    ``ABHI[k] = sum_i  int (x_k - x_i)_+ dt``.
    """
    X = _check(values, grid)
    w = grid.trapezoid_weights()
    n, m = X.shape
    # E[k, i] = int (x_i - x_k)_+ dt, so ABEI sums rows and ABHI sums columns
    E = np.empty((n, n))
    for rows in _row_chunks(n, m):
        diff = X[None, :, :] - X[rows, None, :]
        np.maximum(diff, 0.0, out=diff)
        diff *= w
        E[rows] = diff.sum(axis=-1)
    # summing a contiguous transpose along rows keeps ABHI_X(x) == ABEI_{-X}(-x) bitwise
    return E.sum(axis=1), np.ascontiguousarray(E.T).sum(axis=1)


def modified_indices(values, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Modified epigraph and hypograph indices (MEI, MHI) of each curve.

    Inequalities are non-strict, so ties are counted on both sides and the
    highest curve gets MEI = 1 - 1/n rather than 1.
    """
    X = _check(values, grid)
    w = grid.trapezoid_weights()
    n, m = X.shape
    total = n * w.sum()
    strictly_below = np.empty(n)
    below = np.empty(n)
    for rows in _row_chunks(n, m):
        xk = X[rows, None, :]
        # 1 - lambda(x_i >= x)/total rewritten as lambda(x_i < x)/total, no cancellation
        strictly_below[rows] = (X[None, :, :] < xk).sum(axis=1) @ w
        below[rows] = (X[None, :, :] <= xk).sum(axis=1) @ w
    return strictly_below / total, np.minimum(below / total, 1.0)


def reflection_check(values, grid: Grid, rtol: float = 1e-12) -> bool:
    """True when ABHI of the sample equals ABEI of the negated sample."""
    X = _check(values, grid)
    _, abhi = area_indices(X, grid)
    abei_neg, _ = area_indices(-X, grid)
    return bool(np.allclose(abhi, abei_neg, rtol=rtol, atol=0.0))


def feature_matrix(triple: SmoothedTriple) -> np.ndarray:
    """The n x 6 matrix of (ABEI, ABHI) on the curves and both derivatives.

    Columns follow ``FEATURE_COLUMNS``.
    """
    cols = []
    for k in range(3):
        cols.extend(area_indices(triple.order(k), triple.grid))
    return np.column_stack(cols)

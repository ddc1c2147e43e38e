"""Natural cubic spline interpolation with analytic derivatives.

All curves of a sample share the grid, so the tridiagonal system for the
knot second derivatives is factored once and solved for every curve at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .core import FunctionalSample, Grid, ValidationError

__all__ = [
    "SplineModel",
    "SmoothedTriple",
    "fit_natural_cubic_spline",
    "natural_spline_moments",
    "smooth_sample",
]


def natural_spline_moments(grid: Grid, y: np.ndarray) -> np.ndarray:
    """Second derivatives at the knots of the natural interpolating spline.

    ``y`` may be a single curve (m,) or a stack of curves (n, m); the
    returned array has the same shape.
    """
    t = grid.points
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != t.size:
        raise ValidationError(f"expected {t.size} values per curve, got {y.shape[-1]}")
    if not np.all(np.isfinite(y)):
        raise ValidationError("spline input contains non-finite values")
    h = np.diff(t)
    slopes = np.diff(y, axis=-1) / h
    rhs = 6.0 * np.diff(slopes, axis=-1)          # (..., m-2)
    m = t.size
    ab = np.zeros((3, m - 2))
    ab[0, 1:] = h[1:-1]
    ab[1] = 2.0 * (h[:-1] + h[1:])
    ab[2, :-1] = h[1:-1]
    inner = solve_banded((1, 1), ab, np.moveaxis(rhs, -1, 0))
    M = np.zeros_like(y)
    M[..., 1:-1] = np.moveaxis(inner, 0, -1)
    return M


@dataclass(frozen=True)
class SplineModel:
    """Piecewise cubic on the knot intervals.

    ``coefficients[k] = (a, b, c, d)`` gives, for ``t`` in interval ``k``,
    ``a + b*s + c*s**2 + d*s**3`` with ``s = t - knots[k]``.
    """

    knots: Grid
    coefficients: np.ndarray

    def __call__(self, t, nu: int = 0) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = self.knots.points
        k = np.clip(np.searchsorted(x, t, side="right") - 1, 0, x.size - 2)
        s = t - x[k]
        a, b, c, d = self.coefficients[k].T
        if nu == 0:
            return a + s * (b + s * (c + s * d))
        if nu == 1:
            return b + s * (2 * c + 3 * s * d)
        if nu == 2:
            return 2 * c + 6 * s * d
        if nu == 3:
            return 6 * d
        return np.zeros_like(s)


def _coefficients(t, y, M):
    h = np.diff(t)
    a = y[..., :-1]
    b = np.diff(y, axis=-1) / h - h * (2 * M[..., :-1] + M[..., 1:]) / 6
    c = M[..., :-1] / 2
    d = np.diff(M, axis=-1) / (6 * h)
    return a, b, c, d


def fit_natural_cubic_spline(grid: Grid, y) -> SplineModel:
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValidationError("fit_natural_cubic_spline takes a single curve")
    M = natural_spline_moments(grid, y)
    coef = np.column_stack(_coefficients(grid.points, y, M))
    return SplineModel(grid, coef)


@dataclass(frozen=True)
class SmoothedTriple:
    """Spline values and first two derivatives of every curve on the grid."""

    grid: Grid
    d0: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def order(self, k: int) -> np.ndarray:
        return (self.d0, self.d1, self.d2)[k]


def smooth_sample(sample: FunctionalSample) -> SmoothedTriple:
    """Fit one natural cubic spline per curve and evaluate orders 0-2 at the knots."""
    t = sample.grid.points
    y = np.array(sample.values)
    M = natural_spline_moments(sample.grid, y)
    _, b, c, d = _coefficients(t, y, M)
    h_last = t[-1] - t[-2]
    d1 = np.empty_like(y)
    d1[:, :-1] = b
    d1[:, -1] = b[:, -1] + h_last * (2 * c[:, -1] + 3 * h_last * d[:, -1])
    return SmoothedTriple(sample.grid, y, d1, M)

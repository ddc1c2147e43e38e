"""Comedian (COM) robust location/scatter and multivariate outlier flagging.

The estimator works in MAD-standardised coordinates, diagonalises the
comedian matrix, and takes componentwise medians and MADs in the rotated
basis (an orthogonalisation in the spirit of OGK). The rotation is applied
``n_sweeps`` times. Squared robust distances are rescaled so their median
matches the chi-square median, and flagged with a boxplot rule.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .core import DetectionResult, ValidationError

__all__ = [
    "DegenerateFeatureError",
    "RobustFit",
    "median",
    "mad",
    "comedian",
    "comedian_matrix",
    "com_fit",
    "com_cutoff",
    "com_detect",
]


class DegenerateFeatureError(ValidationError):
    """A feature column has zero MAD and cannot be standardised."""

    def __init__(self, column: int, name: str | None = None):
        label = f"{column} ({name})" if name else str(column)
        super().__init__(f"feature column {label} has zero MAD (degenerate feature)")
        self.column = column
        self.name = name


def median(v) -> float:
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("median of an empty vector")
    return float(np.median(v))


def mad(v) -> float:
    """Unscaled median absolute deviation, ``med |v - med(v)|``."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size < 2:
        raise ValueError("MAD needs at least two values")
    return float(np.median(np.abs(v - np.median(v))))


def comedian(x, y) -> float:
    """``med{(x_i - med x)(y_i - med y)}``."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("comedian needs at least two values")
    return float(np.median((x - np.median(x)) * (y - np.median(y))))


def comedian_matrix(Y) -> np.ndarray:
    Y = np.asarray(Y, dtype=float)
    C = Y - np.median(Y, axis=0)
    p = Y.shape[1]
    out = np.empty((p, p))
    for j in range(p):
        out[j, j:] = np.median(C[:, j, None] * C[:, j:], axis=0)
        out[j:, j] = out[j, j:]
    return out


def _column_mads(X):
    return np.median(np.abs(X - np.median(X, axis=0)), axis=0)


@dataclass(frozen=True)
class RobustFit:
    location: np.ndarray
    scatter: np.ndarray
    distances: np.ndarray
    cutoff: float


def _pinv_sym(S, floor):
    vals, vecs = np.linalg.eigh(S)
    top = vals.max()
    lim = floor * top
    if vals.min() < lim:
        warnings.warn(
            "reconstructed scatter is near-singular; eigenvalues floored",
            RuntimeWarning,
            stacklevel=3,
        )
        vals = np.maximum(vals, lim)
    return (vecs / vals) @ vecs.T


def com_fit(
    data,
    n_sweeps: int = 2,
    whisker: float = 1.5,
    eig_floor: float = 1e-12,
) -> RobustFit:
    """Fit the comedian estimator and return corrected squared distances.

    Parameters
    ----------
    data : (n, p) array
        One observation per row, ``n > p``.
    n_sweeps : int
        Number of standardise-and-rotate passes.
    whisker : float
        Boxplot inflation factor used for the cutoff.
    eig_floor : float
        Relative eigenvalue floor applied when inverting the scatter.
    """
    X = np.asarray(data, dtype=float)
    if X.ndim != 2:
        raise ValidationError("data must be an (n, p) matrix")
    n, p = X.shape
    if p < 1 or n <= p:
        raise ValidationError(f"need n > p >= 1, got n={n}, p={p}")
    if not np.all(np.isfinite(X)):
        raise ValidationError("data contains non-finite values")
    if n_sweeps < 1:
        raise ValueError("n_sweeps must be >= 1")

    # X @ A maps the data into the final rotated coordinates Z
    A = np.eye(p)
    Z = X
    for sweep in range(n_sweeps):
        s = _column_mads(Z)
        zero = np.flatnonzero(s <= 0)
        if zero.size:
            if sweep == 0:
                raise DegenerateFeatureError(int(zero[0]))
            s[zero] = 1.0
        Y = Z / s
        _, E = np.linalg.eigh(comedian_matrix(Y))
        E = E[:, ::-1]
        Z = Y @ E
        A = (A / s) @ E

    loc_z = np.median(Z, axis=0)
    scale_z = _column_mads(Z)
    A_inv = np.linalg.inv(A)
    location = loc_z @ A_inv
    scatter = A_inv.T @ (scale_z[:, None] ** 2 * A_inv)
    scatter = (scatter + scatter.T) / 2

    prec = _pinv_sym(scatter, eig_floor)
    centred = X - location
    d2 = np.einsum("ij,jk,ik->i", centred, prec, centred)
    d2 = np.maximum(d2, 0.0)
    med = np.median(d2)
    if med > 0:
        d2 = d2 * (stats.chi2.ppf(0.5, p) / med)
    return RobustFit(location, scatter, d2, com_cutoff(d2, p, whisker))


def com_cutoff(distances, p: int, whisker: float = 1.5) -> float:
    """Upper boxplot fence ``Q3 + whisker * IQR`` of the squared distances.

    Quartiles use linear interpolation between order statistics.
    """
    d = np.asarray(distances, dtype=float).ravel()
    if d.size < 4:
        raise ValidationError("cutoff needs at least four distances")
    if p < 1:
        raise ValidationError("dimension must be positive")
    q1, q3 = np.percentile(d, [25, 75])
    return float(q3 + whisker * (q3 - q1))


def com_detect(data, **kwargs) -> DetectionResult:
    fit = com_fit(data, **kwargs)
    return DetectionResult(fit.distances, fit.distances > fit.cutoff, fit.cutoff)

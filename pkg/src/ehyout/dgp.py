"""Seeded simulation models for functional outlier detection benchmarks.

Randomness comes from numpy's counter-based Philox generator. Every sample
has one stream for shared draws (outlier positions, DGP19 rotations) keyed
``(seed, 0)`` and one stream per curve keyed ``(seed, 1, i)``, so a curve's
values do not depend on the order in which curves are generated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import BSpline

from .core import FunctionalSample, Grid

__all__ = [
    "Kernel",
    "KERNELS",
    "DgpSpec",
    "covariance_matrix",
    "cholesky_factor",
    "gp_sample",
    "generate",
    "outlier_count",
    "bspline_basis",
    "random_rotation",
]

N_DGPS = 19
# DGP12-16 detection rates move sharply with resolution because the c* kernel
# is rougher than gamma at small lags; see the README for how 120 was chosen
DEFAULT_GRID_SIZE = 120
DGP11_GRID_SIZE = 500


@dataclass(frozen=True)
class Kernel:
    """Stationary kernel ``variance * exp(-|s - t|**power / scale)``."""

    name: str
    variance: float
    scale: float = 1.0
    power: float = 1.0

    def __call__(self, s, t):
        d = np.abs(np.subtract.outer(np.asarray(s, float), np.asarray(t, float)))
        return self.variance * np.exp(-(d**self.power) / self.scale)


KERNELS = {
    "gamma": Kernel("gamma", 1.0),                         # exp(-|t-s|)
    "gamma_bar": Kernel("gamma_bar", 0.3, 0.3),            # 0.3 exp(-|t-s|/0.3)
    "gamma2": Kernel("gamma2", 5.0, 0.5, 0.5),             # 5 exp(-2|t-s|^0.5)
    "c_tilde": Kernel("c_tilde", 6.0, 1.0, 0.1),           # 6 exp(-|s-t|^0.1)
    "c_star": Kernel("c_star", 0.1, 4.0, 0.1),             # 0.1 exp(-|s-t|^0.1 / 4)
    "g": Kernel("g", 0.2, 0.3),                            # 0.2 exp(-|s-t|/0.3)
}


def covariance_matrix(grid: Grid, kernel: Kernel) -> np.ndarray:
    t = grid.points
    return kernel(t, t)


@lru_cache(maxsize=64)
def _cholesky_cached(points: bytes, kernel: Kernel) -> np.ndarray:
    t = np.frombuffer(points, dtype=float)
    C = kernel(t, t)
    eye = np.eye(t.size)
    jitter = 0.0
    for jitter in (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6):
        try:
            L = np.linalg.cholesky(C + jitter * kernel.variance * eye)
        except np.linalg.LinAlgError:
            continue
        L.setflags(write=False)
        return L
    raise np.linalg.LinAlgError(
        f"covariance for kernel {kernel.name} is not positive definite "
        f"even with jitter {jitter:g}"
    )


def cholesky_factor(grid: Grid, kernel: Kernel) -> np.ndarray:
    """Lower Cholesky factor of the kernel matrix, with escalating jitter."""
    return _cholesky_cached(grid.points.tobytes(), kernel)


def gp_sample(grid: Grid, kernel: Kernel, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` zero-mean Gaussian process paths on ``grid`` as rows."""
    L = cholesky_factor(grid, kernel)
    z = rng.standard_normal((count, len(grid)))
    return z @ L.T


@dataclass(frozen=True)
class DgpSpec:
    id: int
    n: int = 200
    m: int | None = None
    alpha: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not (isinstance(self.id, (int, np.integer)) and 1 <= self.id <= N_DGPS):
            raise ValueError(f"dgp id must be 1..{N_DGPS}, got {self.id!r}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 0 <= self.alpha < 0.5:
            raise ValueError("alpha must lie in [0, 0.5)")
        if self.m is not None and self.m < 4:
            raise ValueError("m must be at least 4")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @property
    def grid_size(self) -> int:
        if self.m is not None:
            return self.m
        return DGP11_GRID_SIZE if self.id == 11 else DEFAULT_GRID_SIZE

    def to_dict(self) -> dict:
        d = asdict(self)
        d["m"] = self.grid_size
        return d


def outlier_count(n: int, alpha: float) -> int:
    k = int(round(alpha * n))
    if alpha > 0 and k == 0:
        warnings.warn(f"alpha*n rounds to 0 for n={n}; using one outlier", stacklevel=2)
        k = 1
    return k


def _grid_for(spec: DgpSpec) -> Grid:
    m = spec.grid_size
    if spec.id == 11:
        return Grid(np.arange(1, m + 1) / m)
    return Grid(np.linspace(0.0, 1.0, m))


def _stream(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(key))))


def _noise(rng, grid, kernel_name="gamma"):
    L = cholesky_factor(grid, KERNELS[kernel_name])
    return L @ rng.standard_normal(len(grid))


def _sign(rng):
    return -1.0 if rng.random() < 0.5 else 1.0


def bspline_basis(grid: Grid, n_basis: int = 25, degree: int = 3) -> np.ndarray:
    """(m, n_basis) cubic B-spline design matrix with equispaced interior knots."""
    a, b = grid.points[0], grid.points[-1]
    n_inner = n_basis - degree - 1
    inner = np.linspace(a, b, n_inner + 2)[1:-1]
    knots = np.concatenate([[a] * (degree + 1), inner, [b] * (degree + 1)])
    return BSpline.design_matrix(grid.points, knots, degree).toarray()


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random orthonormal matrix from the QR factorisation of a Gaussian matrix."""
    Q, R = np.linalg.qr(rng.standard_normal((dim, dim)))
    return Q * np.sign(np.diag(R))


# Per-curve models. Each takes the curve's stream, the grid, and any
# sample-level context, and returns one row of values.


def _linear_gp(rng, t, grid):
    return 4 * t + _noise(rng, grid)


def _out_shift(rng, t, grid):
    return 4 * t + 8 * _sign(rng) + _noise(rng, grid)


def _out_spike(rng, t, grid):
    k = _sign(rng)
    T = rng.uniform(0.1, 0.9)
    return 4 * t + 8 * k * ((T <= t) & (t <= T + 0.05)) + _noise(rng, grid)


def _out_step(rng, t, grid):
    k = _sign(rng)
    T = rng.uniform(0.1, 0.9)
    return 4 * t + 8 * k * (T <= t) + _noise(rng, grid)


def _out_rough(rng, t, grid):
    return 4 * t + _noise(rng, grid, "gamma2")


def _out_peak(rng, t, grid):
    u = rng.integers(0, 2)
    v = rng.uniform(0.25, 0.75)
    peak = np.exp(-50 * (t - v) ** 2) / math.sqrt(0.02 * math.pi)
    return 4 * t + 1.8 * (-1) ** u + (-1) ** (1 - u) * peak + _noise(rng, grid)


def _out_periodic(rng, t, grid):
    theta = rng.uniform(0.25, 0.75)
    return 4 * t + 2 * np.sin(4 * np.pi * (t + theta)) + _noise(rng, grid)


def _out_mixture(rng, t, grid):
    model = (_out_shift, _out_spike, _out_rough, _out_periodic)[rng.integers(0, 4)]
    return model(rng, t, grid)


def _hump(rng, t, grid):
    return 30 * t * (1 - t) ** 1.5 + _noise(rng, grid, "gamma_bar")


def _hump_reversed(rng, t, grid):
    return 30 * (1 - t) * t**1.5 + _noise(rng, grid, "gamma_bar")


def _wave(phase):
    def model(rng, t, grid):
        return 2 * np.sin(15 * np.pi * t + phase) + _noise(rng, grid)

    return model


def _sincos(lo, hi):
    def draw(rng, theta):
        c1, c2 = rng.uniform(lo, hi, size=2)
        return c1 * np.sin(theta) + c2 * np.cos(theta)

    return draw


def _dgp9_in(rng, t, grid):
    return _sincos(3, 8)(rng, 2 * np.pi * t) + _noise(rng, grid)


def _dgp9_out(rng, t, grid):
    theta = 2 * np.pi * t
    low = _sincos(1.5, 2.5)(rng, theta)
    high = _sincos(9, 10.5)(rng, theta)
    u = rng.integers(0, 2)
    return low * (1 - u) + high * u + _noise(rng, grid)


def _dgp11_in(rng, t, grid):
    idx = np.arange(1, t.size + 1)
    return rng.normal(5, 4) + 0.05 * idx + np.sin(np.pi * t**2)


def _dgp11_out(rng, t, grid):
    idx = np.arange(1, t.size + 1)
    return rng.normal(5, 3) + 0.05 * idx + np.cos(20 * t)


def _pure_gp(kernel_name):
    def model(rng, t, grid):
        return _noise(rng, grid, kernel_name)

    return model


def _arctan(noise):
    def model(rng, t, grid):
        return 0.1 + np.arctan(t) + _noise(rng, grid, noise)

    return model


def _hump_gp(noise):
    def model(rng, t, grid):
        return 30 * t * (1 - t) ** 1.5 + _noise(rng, grid, noise)

    return model


def _dgp16_out(rng, t, grid):
    theta = rng.uniform(0.25, 0.5)
    return 0.1 * np.sin(40 * (t + theta) * np.pi) + _noise(rng, grid, "c_star")


def _dgp17_in(rng, t, grid):
    A = rng.normal(0, 2)
    B = rng.exponential(1.0)
    return A + B * np.arctan(t) + _noise(rng, grid, "g")


def _dgp17_out(rng, t, grid):
    return 1 - 2 * np.arctan(t) + _noise(rng, grid, "g")


def _dgp18_out(rng, t, grid):
    y = np.where(t <= 0.5, 0.5, -0.5) + math.log(2) * np.arctan(t)
    return y + _noise(rng, grid, "g")


MODELS = {
    1: (_linear_gp, _out_shift),
    2: (_linear_gp, _out_spike),
    3: (_linear_gp, _out_step),
    4: (_hump, _hump_reversed),
    5: (_linear_gp, _out_rough),
    6: (_linear_gp, _out_peak),
    7: (_linear_gp, _out_periodic),
    8: (_wave(0.0), _wave(2.0)),
    9: (_dgp9_in, _dgp9_out),
    10: (_linear_gp, _out_mixture),
    11: (_dgp11_in, _dgp11_out),
    12: (_pure_gp("gamma"), _pure_gp("c_tilde")),
    13: (_wave(0.0), _wave(4.0)),
    14: (_arctan("gamma"), _arctan("c_star")),
    15: (_hump_gp("gamma"), _hump_gp("c_star")),
    16: (_pure_gp("gamma"), _dgp16_out),
    17: (_dgp17_in, _dgp17_out),
    18: (_pure_gp("gamma"), _dgp18_out),
}

DGP19_BASIS = 25
DGP19_NOISE = 0.3
DGP19_OUTLIER_SCALE = 1.1


def _dgp19(spec, grid, labels, shared):
    # white noise belongs to the outlier model only
    B = bspline_basis(grid, DGP19_BASIS)
    R = random_rotation(shared, DGP19_BASIS)
    # QR re-orthonormalises the product and absorbs the 1.1 factor
    Q, Rq = np.linalg.qr(R @ (DGP19_OUTLIER_SCALE * random_rotation(shared, DGP19_BASIS)))
    R_out = Q * np.sign(np.diag(Rq))
    rows = np.empty((spec.n, len(grid)))
    for i in range(spec.n):
        rng = _stream(spec.seed, 1, i)
        if labels[i]:
            rows[i] = B @ (R_out @ dgp19_coefficients(rng))
            rows[i] += DGP19_NOISE * rng.standard_normal(len(grid))
        else:
            rows[i] = B @ (R @ dgp19_coefficients(rng))
    return rows


def dgp19_coefficients(rng, dim: int = DGP19_BASIS) -> np.ndarray:
    """Unit-norm coefficients supported on the first two basis dimensions."""
    c = np.zeros(dim)
    z = rng.standard_normal(2)
    c[:2] = z / np.linalg.norm(z)
    return c


def generate(spec: DgpSpec) -> FunctionalSample:
    """Draw a labelled sample from the model selected by ``spec.id``."""
    grid = _grid_for(spec)
    t = grid.points
    shared = _stream(spec.seed, 0)
    k = outlier_count(spec.n, spec.alpha)
    labels = np.zeros(spec.n, dtype=bool)
    labels[shared.choice(spec.n, size=k, replace=False)] = True

    if spec.id == 19:
        values = _dgp19(spec, grid, labels, shared)
    else:
        inlier, outlier = MODELS[spec.id]
        values = np.empty((spec.n, t.size))
        for i in range(spec.n):
            model = outlier if labels[i] else inlier
            values[i] = model(_stream(spec.seed, 1, i), t, grid)
    return FunctionalSample(grid, values, labels)

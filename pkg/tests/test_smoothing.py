import numpy as np
import pytest
from scipy.interpolate import CubicSpline

from ehyout.core import FunctionalSample, Grid, equispaced_grid
from ehyout.smoothing import fit_natural_cubic_spline, natural_spline_moments, smooth_sample


def _irregular(m=17, seed=0):
    rng = np.random.default_rng(seed)
    return Grid(np.sort(rng.uniform(0, 1, m)))


def test_matches_scipy_natural_spline():
    g = _irregular()
    y = np.random.default_rng(1).standard_normal(len(g))
    ours = fit_natural_cubic_spline(g, y)
    ref = CubicSpline(g.points, y, bc_type="natural")
    tt = np.linspace(g.points[0], g.points[-1], 503)
    for nu in range(3):
        np.testing.assert_allclose(ours(tt, nu), ref(tt, nu), rtol=1e-9, atol=1e-9)


def test_constant_curve():
    g = equispaced_grid(9)
    s = fit_natural_cubic_spline(g, np.full(9, 3.5))
    tt = np.linspace(0, 1, 50)
    np.testing.assert_allclose(s(tt), 3.5, rtol=0, atol=1e-14)
    assert np.abs(s(tt, 1)).max() <= 1e-12
    assert np.abs(s(tt, 2)).max() <= 1e-12


@pytest.mark.parametrize("a,b", [(4.0, 0.0), (-2.5, 7.0), (1e3, -1e3)])
def test_affine_exactness(a, b):
    g = _irregular(23, seed=4)
    s = FunctionalSample(g, np.vstack([a * g.points + b, -a * g.points]))
    tri = smooth_sample(s)
    assert np.abs(tri.d1[0] - a).max() <= 1e-10 * max(1, abs(a))
    assert np.abs(tri.d1[1] + a).max() <= 1e-10 * max(1, abs(a))
    assert np.abs(tri.d2).max() <= 1e-10 * max(1, abs(a))


def test_c2_continuity_at_interior_knots():
    g = _irregular(30, seed=2)
    y = np.sin(7 * g.points) + np.random.default_rng(3).normal(0, 0.2, 30)
    s = fit_natural_cubic_spline(g, y)
    x, C = g.points, s.coefficients
    h = np.diff(x)
    # evaluate each left piece at its right end and compare with the next piece's start
    a, b, c, d = C[:-1].T
    hh = h[:-1]
    left = [a + hh * (b + hh * (c + hh * d)), b + hh * (2 * c + 3 * hh * d), 2 * c + 6 * hh * d]
    right = [C[1:, 0], C[1:, 1], 2 * C[1:, 2]]
    for lv, rv in zip(left, right):
        scale = np.maximum(1.0, np.abs(rv))
        assert np.all(np.abs(lv - rv) <= 1e-9 * scale)


def test_interpolation_and_natural_boundary():
    g = _irregular(12, seed=5)
    Y = np.random.default_rng(6).standard_normal((5, 12))
    tri = smooth_sample(FunctionalSample(g, Y))
    np.testing.assert_array_equal(tri.d0, Y)
    assert np.abs(tri.d2[:, [0, -1]]).max() <= 1e-10
    M = natural_spline_moments(g, Y)
    np.testing.assert_array_equal(M, tri.d2)


def test_sin_derivative_accuracy():
    g = equispaced_grid(101)
    t = g.points
    tri = smooth_sample(FunctionalSample(g, np.vstack([np.sin(2 * np.pi * t)] * 2)))
    err = np.abs(tri.d1[0, 1:-1] - 2 * np.pi * np.cos(2 * np.pi * t[1:-1]))
    assert err.max() <= 0.05


def test_linearity():
    g = _irregular(15, seed=7)
    rng = np.random.default_rng(8)
    y, z = rng.standard_normal((2, 15))
    al, be = 1.7, -0.3
    lhs = smooth_sample(FunctionalSample(g, np.vstack([al * y + be * z, y])))
    parts = smooth_sample(FunctionalSample(g, np.vstack([y, z])))
    for k in range(3):
        comb = al * parts.order(k)[0] + be * parts.order(k)[1]
        np.testing.assert_allclose(lhs.order(k)[0], comb, rtol=1e-10, atol=1e-10)


def test_affine_pair_derivatives():
    g = equispaced_grid(50)
    t = g.points
    tri = smooth_sample(FunctionalSample(g, np.vstack([4 * t, 4 * t + 8])))
    np.testing.assert_allclose(tri.d1, 4.0, atol=1e-10)
    np.testing.assert_allclose(tri.d2, 0.0, atol=1e-10)

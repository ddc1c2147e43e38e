import numpy as np
import pytest

from ehyout.core import (
    DetectionResult,
    FunctionalSample,
    Grid,
    ValidationError,
    equispaced_grid,
    load_labels,
    load_sample,
    save_labels,
    save_sample,
)


def test_grid_rejects_short_and_unsorted():
    with pytest.raises(ValidationError):
        Grid([0, 1, 2])
    with pytest.raises(ValidationError, match="index"):
        Grid([0, 1, 1, 2])
    with pytest.raises(ValidationError):
        Grid([0, 1, np.nan, 3])


def test_trapezoid_weights_sum_to_length():
    g = Grid([0.0, 0.1, 0.5, 0.6, 1.3])
    w = g.trapezoid_weights()
    assert w.sum() == pytest.approx(1.3, rel=1e-15)
    assert w[0] == pytest.approx(0.05)
    assert w[2] == pytest.approx(0.25)


def test_sample_validation():
    g = equispaced_grid(5)
    with pytest.raises(ValidationError, match="two curves"):
        FunctionalSample(g, np.zeros((1, 5)))
    bad = np.zeros((3, 5))
    bad[1, 2] = np.inf
    with pytest.raises(ValidationError, match=r"\(1, 2\)"):
        FunctionalSample(g, bad)
    with pytest.raises(ValidationError):
        FunctionalSample(g, np.zeros((3, 4)))
    with pytest.raises(ValidationError):
        FunctionalSample(g, np.zeros((3, 5)), labels=[1, 0])


def test_sample_is_read_only():
    s = FunctionalSample(equispaced_grid(5), np.zeros((2, 5)))
    with pytest.raises(ValueError):
        s.values[0, 0] = 1.0


def test_load_default_grid(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("\n".join(",".join(str(v) for v in range(5)) for _ in range(3)))
    s = load_sample(p)
    assert s.n == 3 and s.m == 5
    np.testing.assert_array_equal(s.grid.points, [0, 0.25, 0.5, 0.75, 1])


def test_load_header_and_errors(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text("0,1,2,4,8\n1,2,3,4,5\n5,4,3,2,1\n")
    s = load_sample(p, has_header=True)
    np.testing.assert_array_equal(s.grid.points, [0, 1, 2, 4, 8])

    p.write_text("1,2,3,4,5\n1,2,3,4\n")
    with pytest.raises(ValidationError, match="ragged"):
        load_sample(p)
    p.write_text("1,2,3,4,5\n1,2,x,4,5\n")
    with pytest.raises(ValidationError, match="non-numeric"):
        load_sample(p)
    p.write_text("0,1,1,2,3\n1,2,3,4,5\n1,2,3,4,5\n")
    with pytest.raises(ValidationError):
        load_sample(p, has_header=True)
    p.write_text("1,2,3\n1,2,3\n")
    with pytest.raises(ValidationError):
        load_sample(p)


def test_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(0)
    g = Grid(np.sort(rng.random(7)))
    s = FunctionalSample(g, rng.standard_normal((4, 7)), labels=[0, 1, 0, 0])
    save_sample(s, tmp_path / "s.csv", header=True)
    save_labels(s.labels, tmp_path / "l.csv")
    back = load_sample(tmp_path / "s.csv", has_header=True, labels_path=tmp_path / "l.csv")
    np.testing.assert_array_equal(back.values, s.values)
    np.testing.assert_array_equal(back.grid.points, g.points)
    np.testing.assert_array_equal(back.labels, s.labels)


def test_label_spellings(tmp_path):
    p = tmp_path / "l.csv"
    p.write_text("outlier\ninlier\ntrue\n0\n")
    np.testing.assert_array_equal(load_labels(p), [True, False, True, False])


def test_detection_result_count():
    r = DetectionResult(np.array([1.0, 5.0]), np.array([False, True]), 2.0)
    assert r.n_flagged == 1

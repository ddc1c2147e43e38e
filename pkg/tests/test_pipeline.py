import numpy as np
import pytest

from ehyout.core import FunctionalSample, equispaced_grid
from ehyout.dgp import DgpSpec, generate
from ehyout.evaluation import confusion, rates
from ehyout.pipeline import FEATURE_SETS, EhyoutConfig, ehyout, index_features
from ehyout.robust import DegenerateFeatureError


def test_config_columns():
    assert EhyoutConfig().columns == (
        "ABEI_d0", "ABHI_d0", "ABEI_d1", "ABHI_d1", "ABEI_d2", "ABHI_d2",
    )
    assert EhyoutConfig("d1_d2_only").columns == ("ABEI_d1", "ABHI_d1", "ABEI_d2", "ABHI_d2")
    for name in FEATURE_SETS:
        assert len(EhyoutConfig(name).columns) in (2, 4, 6)
    with pytest.raises(ValueError):
        EhyoutConfig("d3")


def test_dgp1_end_to_end():
    s = generate(DgpSpec(1, alpha=0.1, seed=7))
    r = ehyout(s)
    tpr, fpr = rates(confusion(r.flags, s.labels))
    assert tpr == 1.0
    assert fpr <= 0.08
    np.testing.assert_array_equal(r.flags, r.scores > r.cutoff)
    assert np.all(r.scores >= 0)


def test_deterministic_and_permutation_equivariant():
    s = generate(DgpSpec(7, n=120, seed=4))
    r1, r2 = ehyout(s), ehyout(s)
    np.testing.assert_array_equal(r1.scores, r2.scores)
    perm = np.random.default_rng(0).permutation(s.n)
    sp = FunctionalSample(s.grid, s.values[perm], s.labels[perm])
    rp = ehyout(sp)
    np.testing.assert_array_equal(rp.flags, r1.flags[perm])
    np.testing.assert_allclose(rp.scores, r1.scores[perm], rtol=1e-9)


def test_common_shift_leaves_flags():
    s = generate(DgpSpec(3, n=100, seed=2))
    shifted = FunctionalSample(s.grid, s.values + 17.5, s.labels)
    np.testing.assert_array_equal(ehyout(shifted).flags, ehyout(s).flags)


def test_reduced_feature_sets_run():
    s = generate(DgpSpec(5, n=100, seed=1))
    for name in ("d1_d2_only", "d0_only", "d2_only"):
        cfg = EhyoutConfig(name)
        assert index_features(s, cfg).shape == (100, len(cfg.columns))
        assert ehyout(s, cfg).scores.shape == (100,)


def test_identical_curves_degenerate():
    g = equispaced_grid(30)
    X = np.vstack([np.sin(3 * g.points)] * 50)
    with pytest.raises(DegenerateFeatureError, match="ABEI_d0"):
        ehyout(FunctionalSample(g, X))
    # tiny jitter on a few rows still leaves most index values tied at zero spread
    X = X.copy()
    X[:3] += 1e-9 * np.arange(1, 4)[:, None]
    with pytest.raises(DegenerateFeatureError):
        ehyout(FunctionalSample(g, X))

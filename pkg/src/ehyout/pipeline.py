"""EHyOut: smooth the curves, compute area indices, flag with COM."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DetectionResult, FunctionalSample
from .indices import FEATURE_COLUMNS, area_indices
from .robust import DegenerateFeatureError, com_fit
from .smoothing import smooth_sample

__all__ = ["FEATURE_SETS", "EhyoutConfig", "ehyout", "index_features"]

# derivative orders used by each feature set
FEATURE_SETS = {
    "d0_d1_d2": (0, 1, 2),
    "d0_only": (0,),
    "d1_d2_only": (1, 2),
    "d0_d1": (0, 1),
    "d0_d2": (0, 2),
    "d1_only": (1,),
    "d2_only": (2,),
}


@dataclass(frozen=True)
class EhyoutConfig:
    feature_set: str = "d0_d1_d2"
    n_sweeps: int = 2
    whisker: float = 1.5
    eig_floor: float = 1e-12

    def __post_init__(self):
        if self.feature_set not in FEATURE_SETS:
            raise ValueError(
                f"unknown feature set {self.feature_set!r}; "
                f"choose from {', '.join(FEATURE_SETS)}"
            )

    @property
    def orders(self) -> tuple[int, ...]:
        return FEATURE_SETS[self.feature_set]

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(c for k in self.orders for c in FEATURE_COLUMNS[2 * k : 2 * k + 2])


def index_features(sample: FunctionalSample, config: EhyoutConfig | None = None):
    """Return the (n, p) index matrix for the configured derivative orders."""
    config = config or EhyoutConfig()
    triple = smooth_sample(sample)
    cols = []
    for k in config.orders:
        cols.extend(area_indices(triple.order(k), triple.grid))
    return np.column_stack(cols)


def ehyout(sample: FunctionalSample, config: EhyoutConfig | None = None) -> DetectionResult:
    """Run the full detector on ``sample``.

    Scores are the corrected squared robust distances; a curve is flagged
    when its score exceeds the boxplot cutoff.
    """
    config = config or EhyoutConfig()
    F = index_features(sample, config)
    try:
        fit = com_fit(
            F,
            n_sweeps=config.n_sweeps,
            whisker=config.whisker,
            eig_floor=config.eig_floor,
        )
    except DegenerateFeatureError as err:
        raise DegenerateFeatureError(err.column, config.columns[err.column]) from None
    return DetectionResult(fit.distances, fit.distances > fit.cutoff, fit.cutoff)

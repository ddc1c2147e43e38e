"""Functional outlier detection with area-based epigraph/hypograph indices."""

from .core import (
    DetectionResult,
    FunctionalSample,
    Grid,
    ValidationError,
    equispaced_grid,
    load_labels,
    load_sample,
    save_labels,
    save_sample,
    validate,
)
from .dgp import DgpSpec, Kernel, KERNELS, generate, gp_sample
from .evaluation import auc, confusion, mcc, rates, run_benchmark
from .indices import FEATURE_COLUMNS, area_indices, feature_matrix, modified_indices, reflection_check
from .pipeline import EhyoutConfig, ehyout, index_features
from .robust import DegenerateFeatureError, com_cutoff, com_detect, com_fit, comedian, mad, median
from .smoothing import SmoothedTriple, SplineModel, fit_natural_cubic_spline, smooth_sample

__version__ = "0.1.0"

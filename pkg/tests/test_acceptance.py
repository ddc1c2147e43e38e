"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is repeated in the pytest terminal
summary. Monte-Carlo runs use seed 1 (replication r uses seed 1 + r).
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from ehyout.cli import main
from ehyout.dgp import DgpSpec, generate
from ehyout.evaluation import run_benchmark
from ehyout.pipeline import ehyout

SEED = 1
TESTS = Path(__file__).parent


def _cell(dgp, reps):
    start = time.perf_counter()
    s = run_benchmark([dgp], [0.1], reps, seed=SEED)
    elapsed = time.perf_counter() - start
    c = s.cell(dgp, 0.1)
    assert c.failed == 0
    return {m: c.median_sd(m)[0] for m in ("TPR", "FPR", "MCC", "AUC")}, elapsed


def test_criterion_1_dgp1(acceptance_record):
    med, sec = _cell(1, 20)
    ok = med["TPR"] == 1.0 and 0.0 <= med["FPR"] <= 0.08 and med["AUC"] >= 0.99 and sec <= 30
    acceptance_record(
        1, ok,
        f"DGP1 TPR {med['TPR']:.3f} (=1), FPR {med['FPR']:.3f} (in [0,0.08]), "
        f"AUC {med['AUC']:.3f} (>=0.99), {sec:.1f} s (<=30)",
    )
    assert ok


def test_criterion_2_dgp7(acceptance_record):
    med, sec = _cell(7, 20)
    ok = med["TPR"] == 1.0 and med["AUC"] >= 0.99 and sec <= 30
    acceptance_record(
        2, ok,
        f"DGP7 TPR {med['TPR']:.3f} (=1), AUC {med['AUC']:.3f} (>=0.99), {sec:.1f} s (<=30)",
    )
    assert ok


def test_criterion_3_dgp14(acceptance_record):
    med, _ = _cell(14, 20)
    ok = med["TPR"] >= 0.70 and med["AUC"] >= 0.90
    acceptance_record(
        3, ok, f"DGP14 TPR {med['TPR']:.3f} (>=0.70), AUC {med['AUC']:.3f} (>=0.90)"
    )
    assert ok


def test_criterion_4_dgp19(acceptance_record):
    med, _ = _cell(19, 20)
    ok = med["AUC"] >= 0.85
    acceptance_record(4, ok, f"DGP19 AUC {med['AUC']:.3f} (>=0.85)")
    assert ok


def test_criterion_5_mean_mcc(acceptance_record):
    start = time.perf_counter()
    s = run_benchmark(range(1, 20), [0.1], 10, seed=SEED)
    sec = time.perf_counter() - start
    ok = s.mean_mcc >= 0.70 and sec <= 600
    acceptance_record(
        5, ok, f"mean MCC over 19 DGPs x 10 reps {s.mean_mcc:.3f} (>=0.70), {sec:.0f} s (<=600)"
    )
    assert ok


def test_criterion_6_speed(acceptance_record):
    sample = generate(DgpSpec(1, n=200, m=100, seed=SEED))
    ehyout(sample)  # warm caches and imports
    start = time.perf_counter()
    ehyout(sample)
    sec = time.perf_counter() - start
    ok = sec < 1.0
    acceptance_record(6, ok, f"single detection on 200x100 took {sec:.4f} s (<1)")
    assert ok


PROPERTY_TESTS = [
    "test_indices.py::test_sum_identity_on_random_samples",
    "test_indices.py::test_reflection_identities_exact",
    "test_indices.py::test_tie_free_gap_is_one_over_n",
    "test_indices.py::test_exhaustive_three_curve_five_point_oracle",
    "test_robust.py::test_scatter_psd_and_symmetric",
    "test_robust.py::test_permutation_equivariance",
    "test_robust.py::test_column_rescaling_invariance",
    "test_smoothing.py::test_affine_exactness",
    "test_smoothing.py::test_c2_continuity_at_interior_knots",
    "test_evaluation.py::test_mcc_examples",
    "test_evaluation.py::test_auc_examples",
]


def test_criterion_7_property_suite(acceptance_record):
    ids = [str(TESTS / t) for t in PROPERTY_TESTS]
    r = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *ids],
        capture_output=True, text=True,
    )
    tail = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr.strip()
    ok = r.returncode == 0
    acceptance_record(7, ok, f"property suite ({len(ids)} groups): {tail}")
    assert ok, r.stdout


def test_criterion_8_bench_reproducible(tmp_path, acceptance_record):
    args = ["bench", "--dgps", "1,7,14,19", "--alpha", "0.05,0.1", "--reps", "3", "--seed", "1"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a), "--no-time"]) == 0
    assert main(args + ["--out", str(b), "--no-time"]) == 0
    ok = a.read_bytes() == b.read_bytes() and len(a.read_text().splitlines()) == 1 + 4 * 2 * 4
    acceptance_record(8, ok, "two identical bench runs give byte-identical metric CSVs")
    assert ok

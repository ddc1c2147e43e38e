"""Classification metrics and the Monte-Carlo benchmark runner."""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dgp import DgpSpec, generate
from .pipeline import EhyoutConfig, ehyout

__all__ = [
    "Confusion",
    "confusion",
    "mcc",
    "rates",
    "auc",
    "RepResult",
    "CellSummary",
    "EvalSummary",
    "run_benchmark",
    "default_threads",
]

METRICS = ("TPR", "FPR", "MCC", "AUC")
THREADS_ENV = "EHYOUT_THREADS"


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion(flags, labels) -> Confusion:
    """Confusion counts with outliers as the positive class."""
    f = np.asarray(flags, dtype=bool).ravel()
    y = np.asarray(labels, dtype=bool).ravel()
    if f.shape != y.shape:
        raise ValueError(f"length mismatch: {f.size} flags vs {y.size} labels")
    return Confusion(
        tp=int(np.sum(f & y)),
        fp=int(np.sum(f & ~y)),
        tn=int(np.sum(~f & ~y)),
        fn=int(np.sum(~f & y)),
    )


def mcc(c: Confusion) -> float:
    """Matthews correlation coefficient; 0 when any margin is empty."""
    denom = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn)
    if denom == 0:
        return 0.0
    return (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denom)


def rates(c: Confusion) -> tuple[float, float]:
    tpr = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    fpr = c.fp / (c.fp + c.tn) if c.fp + c.tn else 0.0
    return tpr, fpr


def auc(scores, labels) -> float:
    """Mann-Whitney estimate of P(score_outlier > score_inlier), ties count 1/2."""
    s = np.asarray(scores, dtype=float).ravel()
    y = np.asarray(labels, dtype=bool).ravel()
    if s.shape != y.shape:
        raise ValueError(f"length mismatch: {s.size} scores vs {y.size} labels")
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both outliers and inliers")
    pos = np.sort(s[y])
    neg = np.sort(s[~y])
    below = np.searchsorted(neg, pos, side="left")
    ties = np.searchsorted(neg, pos, side="right") - below
    return float((below.sum() + 0.5 * ties.sum()) / (n_pos * n_neg))


@dataclass(frozen=True)
class RepResult:
    rep: int
    seed: int
    tpr: float = math.nan
    fpr: float = math.nan
    mcc: float = math.nan
    auc: float = math.nan
    seconds: float = math.nan
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _median_sd(x):
    x = np.asarray([v for v in x if not math.isnan(v)], dtype=float)
    if x.size == 0:
        return math.nan, math.nan
    sd = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    return float(np.median(x)), sd


@dataclass
class CellSummary:
    """Replication results for one (dgp, alpha) cell."""

    dgp: int
    alpha: float
    reps: list[RepResult] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(not r.ok for r in self.reps)

    def values(self, metric: str) -> list[float]:
        attr = metric.lower()
        return [getattr(r, attr) for r in self.reps if r.ok]

    def median_sd(self, metric: str) -> tuple[float, float]:
        return _median_sd(self.values(metric))

    def mean(self, metric: str) -> float:
        v = [x for x in self.values(metric) if not math.isnan(x)]
        return float(np.mean(v)) if v else math.nan

    @property
    def mean_time(self) -> float:
        t = [r.seconds for r in self.reps if r.ok]
        return float(np.mean(t)) if t else math.nan


@dataclass
class EvalSummary:
    method: str
    cells: list[CellSummary]

    def cell(self, dgp: int, alpha: float) -> CellSummary:
        for c in self.cells:
            if c.dgp == dgp and c.alpha == alpha:
                return c
        raise KeyError((dgp, alpha))

    def _pooled(self, attr):
        v = [getattr(r, attr) for c in self.cells for r in c.reps if r.ok]
        v = [x for x in v if not math.isnan(x)]
        return v

    @property
    def mean_mcc(self) -> float:
        v = self._pooled("mcc")
        return float(np.mean(v)) if v else math.nan

    @property
    def mean_time(self) -> float:
        v = self._pooled("seconds")
        return float(np.mean(v)) if v else math.nan

    def mcc_quartiles(self) -> tuple[float, float]:
        v = self._pooled("mcc")
        if not v:
            return math.nan, math.nan
        q1, q3 = np.percentile(v, [25, 75])
        return float(q1), float(q3)

    def rows(self, include_time: bool = True):
        """Long-format records, one per (dgp, alpha, metric)."""
        for c in self.cells:
            for metric in METRICS:
                med, sd = c.median_sd(metric)
                yield {
                    "method": self.method,
                    "dgp": c.dgp,
                    "alpha": c.alpha,
                    "metric": metric,
                    "median": med,
                    "sd": sd,
                    "mean": c.mean(metric),
                    "reps": len(c.reps),
                    "failed": c.failed,
                }
            if include_time:
                t = [r.seconds for r in c.reps if r.ok]
                med, sd = _median_sd(t)
                yield {
                    "method": self.method,
                    "dgp": c.dgp,
                    "alpha": c.alpha,
                    "metric": "ET",
                    "median": med,
                    "sd": sd,
                    "mean": c.mean_time,
                    "reps": len(c.reps),
                    "failed": c.failed,
                }

    def to_csv(self, path, include_time: bool = True) -> None:
        fields = ["method", "dgp", "alpha", "metric", "median", "sd", "mean", "reps", "failed"]
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            for row in self.rows(include_time):
                w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})

    def format_table(self) -> str:
        head = f"{'DGP':>4} {'alpha':>6}  {'TPR':>15} {'FPR':>15} {'MCC':>15} {'AUC':>15} {'ET(s)':>8}"
        lines = [head, "-" * len(head)]
        for c in self.cells:
            parts = []
            for metric in METRICS:
                med, sd = c.median_sd(metric)
                parts.append(f"{med:.3f} ({sd:.3f})".rjust(15))
            note = f"  [{c.failed} failed]" if c.failed else ""
            lines.append(
                f"{c.dgp:>4} {c.alpha:>6.2f}  {' '.join(parts)} {c.mean_time:>8.4f}{note}"
            )
        q1, q3 = self.mcc_quartiles()
        lines.append("-" * len(head))
        lines.append(
            f"{self.method}: mean time {self.mean_time:.4f} s, mean MCC {self.mean_mcc:.3f}, "
            f"MCC Q1 {q1:.3f}, MCC Q3 {q3:.3f}"
        )
        return "\n".join(lines)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _one_rep(dgp, alpha, rep, seed, n, m, config) -> RepResult:
    try:
        sample = generate(DgpSpec(id=dgp, n=n, m=m, alpha=alpha, seed=seed))
        start = time.perf_counter()
        result = ehyout(sample, config)
        elapsed = time.perf_counter() - start
    except Exception as err:  # recorded per replication, not fatal
        return RepResult(rep, seed, error=f"{type(err).__name__}: {err}")
    c = confusion(result.flags, sample.labels)
    tpr, fpr = rates(c)
    has_both = 0 < c.tp + c.fn < c.n
    return RepResult(
        rep,
        seed,
        tpr=tpr,
        fpr=fpr,
        mcc=mcc(c),
        auc=auc(result.scores, sample.labels) if has_both else math.nan,
        seconds=elapsed,
    )


def run_benchmark(
    dgp_ids,
    alphas,
    reps: int,
    config: EhyoutConfig | None = None,
    seed: int = 0,
    n: int = 200,
    m: int | None = None,
    threads: int | None = None,
) -> EvalSummary:
    """Run EHyOut on ``reps`` samples of every (dgp, alpha) pair.

    Replication ``r`` uses seed ``seed + r``. Timing covers only the
    detection call.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    config = config or EhyoutConfig()
    threads = threads or default_threads()
    cells = [CellSummary(int(d), float(a)) for d in dgp_ids for a in alphas]
    jobs = [(c, r) for c in cells for r in range(reps)]

    def run(job):
        c, r = job
        return _one_rep(c.dgp, c.alpha, r, seed + r, n, m, config)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    for (c, _), res in zip(jobs, results):
        c.reps.append(res)
    return EvalSummary("EHyOut", cells)

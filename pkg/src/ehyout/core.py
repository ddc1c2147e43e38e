"""Domain types and CSV I/O for curves observed on a shared grid."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Grid",
    "FunctionalSample",
    "DetectionResult",
    "ValidationError",
    "equispaced_grid",
    "validate",
    "load_sample",
    "load_labels",
    "save_sample",
    "save_labels",
]

MIN_GRID_POINTS = 4


class ValidationError(ValueError):
    """Raised when curves, grids or labels violate their invariants."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid:
    """Strictly increasing abscissae shared by every curve."""

    points: np.ndarray

    def __post_init__(self):
        pts = _frozen(np.ravel(self.points))
        if pts.size < MIN_GRID_POINTS:
            raise ValidationError(
                f"grid needs at least {MIN_GRID_POINTS} points, got {pts.size}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValidationError("grid contains non-finite values")
        bad = np.flatnonzero(np.diff(pts) <= 0)
        if bad.size:
            raise ValidationError(f"grid is not strictly increasing at index {bad[0] + 1}")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    @property
    def length(self) -> float:
        return float(self.points[-1] - self.points[0])

    def trapezoid_weights(self) -> np.ndarray:
        """Quadrature weights w with sum(w * f) equal to the trapezoid rule."""
        t = self.points
        w = np.empty_like(t)
        h = np.diff(t)
        w[0] = h[0] / 2
        w[-1] = h[-1] / 2
        w[1:-1] = (h[:-1] + h[1:]) / 2
        return w


def equispaced_grid(m: int, start: float = 0.0, stop: float = 1.0) -> Grid:
    return Grid(np.linspace(start, stop, m))


@dataclass(frozen=True)
class FunctionalSample:
    """n curves evaluated on a common grid, with optional outlier labels.

    ``values[i, j]`` is curve ``i`` at ``grid.points[j]``. ``labels`` is a
    boolean vector where True marks an outlier.
    """

    grid: Grid
    values: np.ndarray
    labels: np.ndarray | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.labels is not None:
            lab = np.array(self.labels, dtype=bool).ravel()
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)
        validate(self)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class DetectionResult:
    scores: np.ndarray
    flags: np.ndarray
    cutoff: float

    @property
    def n_flagged(self) -> int:
        return int(np.count_nonzero(self.flags))


def validate(sample: FunctionalSample) -> None:
    """Check every FunctionalSample invariant, raising ValidationError."""
    values = np.asarray(sample.values)
    if values.ndim != 2:
        raise ValidationError(f"values must be a 2-d matrix, got {values.ndim} dims")
    n, m = values.shape
    if n < 2:
        raise ValidationError("need at least two curves")
    if m != len(sample.grid):
        raise ValidationError(
            f"values have {m} columns but the grid has {len(sample.grid)} points"
        )
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"non-finite value at ({i}, {j})")
    if sample.labels is not None and sample.labels.shape != (n,):
        raise ValidationError(f"labels have length {sample.labels.size}, expected {n}")


def _parse_row(row, lineno):
    try:
        return [float(cell) for cell in row]
    except ValueError as err:
        raise ValidationError(f"non-numeric cell on line {lineno}: {err}") from None


def load_sample(path, has_header: bool = False, labels_path=None) -> FunctionalSample:
    """Read a rows-are-curves CSV.

    With ``has_header`` the first row holds the grid abscissae; otherwise the
    grid is equispaced on [0, 1].
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [(k + 1, r) for k, r in enumerate(csv.reader(fh)) if r]
    if not rows:
        raise ValidationError(f"{path} is empty")
    grid = None
    if has_header:
        lineno, header = rows.pop(0)
        grid = Grid(_parse_row(header, lineno))
    if not rows:
        raise ValidationError(f"{path} has no data rows")
    width = len(rows[0][1])
    for lineno, r in rows:
        if len(r) != width:
            raise ValidationError(
                f"ragged row on line {lineno}: {len(r)} fields, expected {width}"
            )
    values = np.array([_parse_row(r, lineno) for lineno, r in rows])
    if grid is None:
        grid = equispaced_grid(width)
    labels = load_labels(labels_path) if labels_path is not None else None
    return FunctionalSample(grid, values, labels)


def load_labels(path) -> np.ndarray:
    """Single-column file of 0/1 (or true/false) outlier labels."""
    out = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            if len(row) != 1:
                raise ValidationError(f"label file line {lineno} has {len(row)} fields")
            cell = row[0].strip().lower()
            if cell in ("1", "true", "outlier"):
                out.append(True)
            elif cell in ("0", "false", "inlier"):
                out.append(False)
            else:
                raise ValidationError(f"bad label {row[0]!r} on line {lineno}")
    return np.array(out, dtype=bool)


def save_sample(sample: FunctionalSample, path, header: bool = False) -> None:
    # repr() of a float round-trips exactly through float()
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if header:
            w.writerow([repr(float(t)) for t in sample.grid.points])
        for row in sample.values:
            w.writerow([repr(float(v)) for v in row])


def save_labels(labels, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        for v in np.asarray(labels, dtype=bool):
            fh.write("1\n" if v else "0\n")

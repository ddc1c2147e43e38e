"""Command-line front end: ``ehyout {simulate,indices,detect,bench}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import warnings
from pathlib import Path

import numpy as np

from .core import ValidationError, load_sample, save_labels, save_sample
from .dgp import DgpSpec, generate
from .evaluation import auc, confusion, mcc, rates, run_benchmark
from .indices import FEATURE_COLUMNS, feature_matrix, modified_indices
from .pipeline import FEATURE_SETS, EhyoutConfig, ehyout, index_features
from .smoothing import smooth_sample

log = logging.getLogger("ehyout")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _sibling(path: Path, suffix: str) -> Path:
    return path.with_name(path.stem + suffix)


def _write_rows(path, header, rows):
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _fmt(v) -> str:
    return repr(float(v))


def _read_input(args):
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    labels = args.labels
    if labels is None and _sibling(path, ".labels.csv").is_file():
        labels = _sibling(path, ".labels.csv")
    return load_sample(path, has_header=args.header, labels_path=labels)


def _need_out(args):
    if not args.out:
        raise UsageError("--out is required")


def cmd_simulate(args) -> int:
    _need_out(args)
    if args.dgp is None or not 1 <= args.dgp <= 19:
        raise UsageError("dgp id must be 1..19")
    try:
        spec = DgpSpec(id=args.dgp, n=args.n, m=args.m, alpha=args.alpha, seed=args.seed)
    except ValueError as err:
        raise UsageError(str(err)) from None
    sample = generate(spec)
    out = Path(args.out)
    save_sample(sample, out, header=args.header)
    save_labels(sample.labels, _sibling(out, ".labels.csv"))
    meta = spec.to_dict() | {"grid": sample.grid.points.tolist(), "header": args.header}
    _sibling(out, ".spec.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    log.info("wrote %s (%d x %d, %d outliers)", out, sample.n, sample.m, sample.labels.sum())
    return EXIT_OK


def cmd_indices(args) -> int:
    _need_out(args)
    sample = _read_input(args)
    F = feature_matrix(smooth_sample(sample))
    if np.all(F == 0):
        log.warning("all curves coincide; every index is zero")
    header = list(FEATURE_COLUMNS)
    cols = [F]
    if args.modified:
        mei, mhi = modified_indices(sample.values, sample.grid)
        header += ["MEI_d0", "MHI_d0"]
        cols.append(np.column_stack([mei, mhi]))
    M = np.hstack(cols)
    _write_rows(args.out, header, ([_fmt(v) for v in row] for row in M))
    return EXIT_OK


def _scatter_plot(path, F, flags, columns):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(F[~flags, 0], F[~flags, 1], s=12, c="0.5", label="inlier")
    ax.scatter(F[flags, 0], F[flags, 1], s=18, c="tab:red", label="flagged")
    ax.set_xlabel(columns[0])
    ax.set_ylabel(columns[1])
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_detect(args) -> int:
    _need_out(args)
    sample = _read_input(args)
    config = EhyoutConfig(
        feature_set=args.feature_set, n_sweeps=args.sweeps, whisker=args.whisker
    )
    result = ehyout(sample, config)
    rows = (
        [i, _fmt(s), int(f), _fmt(result.cutoff)]
        for i, (s, f) in enumerate(zip(result.scores, result.flags))
    )
    _write_rows(args.out, ["index", "score", "flag", "cutoff"], rows)
    print(f"{result.n_flagged} of {sample.n} curves flagged (cutoff {result.cutoff:.4f})")
    if sample.labels is not None:
        c = confusion(result.flags, sample.labels)
        tpr, fpr = rates(c)
        line = f"TPR {tpr:.3f}  FPR {fpr:.3f}  MCC {mcc(c):.3f}"
        if 0 < sample.labels.sum() < sample.n:
            line += f"  AUC {auc(result.scores, sample.labels):.3f}"
        print(line)
    if args.plot:
        F = index_features(sample, config)
        cols = config.columns
        plot = Path(args.plot)
        _scatter_plot(plot, F, result.flags, cols)
        _write_rows(
            plot.with_suffix(".csv"),
            ["index", *cols, "flag"],
            ([i, *map(_fmt, row), int(f)] for i, (row, f) in enumerate(zip(F, result.flags))),
        )
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    dgps = _int_list(args.dgps)
    if not dgps or any(not 1 <= d <= 19 for d in dgps):
        raise UsageError("dgp id must be 1..19")
    alphas = _float_list(args.alpha)
    if not alphas or any(not 0 < a < 0.5 for a in alphas):
        raise UsageError("alpha values must lie in (0, 0.5)")
    config = EhyoutConfig(feature_set=args.feature_set)
    summary = run_benchmark(
        dgps, alphas, args.reps, config, seed=args.seed, n=args.n, m=args.m,
        threads=args.threads,
    )
    print(summary.format_table())
    if args.out:
        summary.to_csv(args.out, include_time=not args.no_time)
    if args.json:
        payload = {
            "method": summary.method,
            "mean_mcc": summary.mean_mcc,
            "mean_time": summary.mean_time,
            "rows": list(summary.rows(include_time=not args.no_time)),
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    for c in summary.cells:
        for r in c.reps:
            if not r.ok:
                print(f"DGP{c.dgp} alpha={c.alpha} rep {r.rep}: {r.error}", file=sys.stderr)
    return EXIT_OK


def _add_input(p):
    p.add_argument("input", help="CSV file, one curve per row")
    p.add_argument("--header", action="store_true", help="first row holds the grid")
    p.add_argument("--labels", help="single-column 0/1 label file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ehyout", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file of default flag values")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw a labelled sample from a DGP")
    p.add_argument("--dgp", type=int)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--header", action="store_true", help="write the grid as a header row")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("indices", help="write the n x 6 index matrix")
    _add_input(p)
    p.add_argument("--modified", action="store_true", help="append MEI/MHI of the curves")
    p.add_argument("--out")
    p.set_defaults(func=cmd_indices)

    p = sub.add_parser("detect", help="flag outlying curves")
    _add_input(p)
    p.add_argument("--feature-set", choices=list(FEATURE_SETS), default="d0_d1_d2")
    p.add_argument("--sweeps", type=int, default=2)
    p.add_argument("--whisker", type=float, default=1.5)
    p.add_argument("--out")
    p.add_argument("--plot", help="SVG path for an ABEI/ABHI scatter of the first feature pair")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("bench", help="Monte-Carlo benchmark over DGPs")
    p.add_argument("--dgps", default="1-19", help="e.g. 1-19 or 1,7,14")
    p.add_argument("--alpha", default="0.1", help="comma-separated proportions")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--feature-set", choices=list(FEATURE_SETS), default="d0_d1_d2")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", help="summary CSV path")
    p.add_argument("--json", help="optional JSON export")
    p.add_argument("--no-time", action="store_true", help="omit timing rows from the CSV")
    p.set_defaults(func=cmd_bench)
    return parser, sub


def _apply_config(parser, subparsers, argv):
    """Parse ``argv`` with defaults taken from ``--config``; explicit flags win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            conf = json.loads(Path(known.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as err:
            parser.error(f"cannot read config {known.config}: {err}")
        if not isinstance(conf, dict):
            parser.error("config file must hold a JSON object")
        conf = {k.replace("-", "_"): v for k, v in conf.items()}
        for sub in subparsers.choices.values():
            sub.set_defaults(**conf)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, subparsers = build_parser()
    try:
        args = _apply_config(parser, subparsers, argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        with warnings.catch_warnings():
            if not args.verbose:
                warnings.simplefilter("ignore", RuntimeWarning)
            return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, OSError, ValueError, np.linalg.LinAlgError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: run configs, self-check suites, one-off fits."""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .config import ConfigError, load_config, parse_config
from .harness import run_config
from .hoeffding import ehcdf
from .suites import SUITES, run_suite

_TABLE_ROWS = {
    "normal": ({"name": "normal", "params": [0.0, 1.0]}, 1.0),
    "t2": ({"name": "student_t", "params": [2.0]}, 1.1),
}


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in run_config(cfg):
        print(path)
    return 0


def _cmd_suite(args) -> int:
    rows = run_suite(args.name, seed=args.seed)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(["check", "value", "threshold", "status"])
        for row in rows:
            writer.writerow([
                row.check, repr(row.value), repr(row.threshold),
                "PASS" if row.passed else "FAIL",
            ])
    finally:
        if out is not sys.stdout:
            out.close()
    failed = [r for r in rows if not r.passed]
    for r in failed:
        print(f"FAIL: {r.check} ({r.value:.6g} vs {r.threshold:.6g})",
              file=sys.stderr)
    return 1 if failed else 0


def _read_sample(path: str) -> np.ndarray:
    values = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            for cell in row:
                cell = cell.strip()
                if not cell:
                    continue
                try:
                    values.append(float(cell))
                except ValueError:
                    if i == 0:
                        break  # header row
                    raise SystemExit(f"error: non-numeric cell {cell!r} in {path}")
    if not values:
        raise SystemExit(f"error: no numeric values found in {path}")
    return np.array(values)


def _cmd_estimate(args) -> int:
    try:
        sample = _read_sample(args.input)
        fitted = ehcdf(sample, m=args.m, gamma=args.gamma)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fitted.to_csv(args.out)
    print(f"{args.out}: {fitted.locations.size} atoms from {sample.size} observations")
    return 0


def _cmd_table(args) -> int:
    rows = [r.strip() for r in args.rows.split(",") if r.strip()]
    unknown = [r for r in rows if r not in _TABLE_ROWS]
    if unknown:
        print(f"error: unknown rows {unknown}; choose from {sorted(_TABLE_ROWS)}",
              file=sys.stderr)
        return 2
    ns = [int(v) for v in args.n.split(",") if v.strip()]
    experiments = []
    for row in rows:
        dist, gamma = _TABLE_ROWS[row]
        experiments.append({
            "distribution": dist,
            "n": ns,
            "gamma": [gamma],
            "estimators": ["ecdf", "ehcdf", "ekcdf"],
            "metrics": ["L1", "L2", "Linf"],
            "replications": args.reps,
            "seed": args.seed,
            "output_dir": args.out,
        })
    cfg = parse_config({"experiments": experiments})
    for path in run_config(cfg):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehcdf",
        description="Smoothed empirical CDF estimation and its simulation harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run experiments from a JSON config")
    p_run.add_argument("--config", required=True, help="path to the JSON config")
    p_run.set_defaults(func=_cmd_run)

    p_suite = sub.add_parser("suite", help="run a named self-check suite")
    p_suite.add_argument("name", choices=sorted(SUITES))
    p_suite.add_argument("--seed", type=int, default=12345)
    p_suite.add_argument("--out", help="write the report CSV here instead of stdout")
    p_suite.set_defaults(func=_cmd_suite)

    p_est = sub.add_parser(
        "estimate", help="fit the m-step estimator to a sample and dump its atoms"
    )
    p_est.add_argument("--input", required=True, help="CSV of sample values")
    group = p_est.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, help="number of steps")
    group.add_argument("--gamma", type=float, help="growth exponent: m = round(n^gamma)")
    p_est.add_argument("--out", required=True, help="output CSV of (location, mass) atoms")
    p_est.set_defaults(func=_cmd_estimate)

    p_tab = sub.add_parser(
        "table-s1", help="preset relative-error sweep (normal and t2 rows)"
    )
    p_tab.add_argument("--rows", default="normal,t2")
    p_tab.add_argument("--n", default="25,50,100", help="comma-separated sample sizes")
    p_tab.add_argument("--reps", type=int, default=1000)
    p_tab.add_argument("--seed", type=int, default=1729)
    p_tab.add_argument("--out", default="table_s1_out", help="output directory")
    p_tab.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

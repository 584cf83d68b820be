"""Simulation harness: paired-design error tables and MSE-ratio curves.

One sample per replication; every requested estimator is evaluated on that
same sample, so the relative-error ratios are paired.  Each replication
owns a counter-derived RNG stream, replications are independent tasks, and
results are reduced in replication order, which makes the CSV outputs
byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

import numpy as np

from .cdf_model import StepCdf, ecdf, lp_distance_step_cont
from .config import ExperimentConfig, SimulationConfig, build_distribution
from .distributions import substream
from .hoeffding import ehcdf
from .kernel_baseline import ekcdf_eval, ekcdf_lp_error, ekcdf_sup_error, sj_bandwidth
from .metrics import wasserstein_step_cont
from .quadrature import QuadratureError
from .svg import line_plot

_DISTANCE_TOL = 1e-6
_SE_FLAG_PP = 1.5

RECORD_FIELDS = ("distribution", "estimator", "gamma", "n", "replication",
                 "metric", "value")
SUMMARY_FIELDS = ("distribution", "estimator", "gamma", "n", "metric",
                  "ratio_percent", "se_percent", "flag")
MSE_FIELDS = ("distribution", "estimator", "gamma", "n", "p", "mse", "ratio")


class EstimatorSpec(NamedTuple):
    kind: str
    gamma: float | None = None

    @property
    def series_label(self) -> str:
        return self.kind if self.gamma is None else f"{self.kind} gamma={self.gamma:g}"


def expand_estimators(cfg: ExperimentConfig) -> tuple[EstimatorSpec, ...]:
    out = []
    for kind in cfg.estimators:
        if kind == "ehcdf":
            out.extend(EstimatorSpec("ehcdf", g) for g in cfg.gamma)
        else:
            out.append(EstimatorSpec(kind))
    return tuple(out)


class _RepTask(NamedTuple):
    dist_cfg: dict
    label: str
    exp_index: int
    seed: int
    n: int
    rep: int
    specs: tuple[EstimatorSpec, ...]
    metrics: tuple[str, ...]
    p_grid: tuple[float, ...]


def _step_metric(g: StepCdf, f, metric: str) -> float | None:
    try:
        if metric == "L1":
            return lp_distance_step_cont(g, f, 1, tol=_DISTANCE_TOL)
        if metric == "L2":
            return lp_distance_step_cont(g, f, 2, tol=_DISTANCE_TOL)
        if metric == "Linf":
            return lp_distance_step_cont(g, f, math.inf)
        if metric == "W1":
            return wasserstein_step_cont(g, f, 1, tol=_DISTANCE_TOL)
        if metric == "W2":
            return wasserstein_step_cont(g, f, 2, tol=_DISTANCE_TOL)
    except QuadratureError:
        return None
    raise ValueError(f"unknown metric {metric!r}")


def _kernel_metric(sample: np.ndarray, h: float, f, metric: str) -> float | None:
    try:
        if metric == "L1":
            return ekcdf_lp_error(sample, h, f, 1, tol=_DISTANCE_TOL)
        if metric == "L2":
            return ekcdf_lp_error(sample, h, f, 2, tol=_DISTANCE_TOL)
        if metric == "Linf":
            return ekcdf_sup_error(sample, h, f)
    except QuadratureError:
        return None
    if metric in ("W1", "W2"):
        return None  # no quantile for the kernel estimate: tagged missing
    raise ValueError(f"unknown metric {metric!r}")


def run_replication(task: _RepTask):
    """All estimator evaluations for one replication (one sample)."""
    f = build_distribution(task.dist_cfg)
    rng = substream(task.seed, "exp", task.exp_index, task.label, task.n, task.rep)
    sample = f.sample(rng, task.n)
    base = ecdf(sample)

    fitted: list[tuple[str, object]] = []
    for spec in task.specs:
        if spec.kind == "ecdf":
            fitted.append(("step", base))
        elif spec.kind == "ehcdf":
            fitted.append(("step", ehcdf(sample, gamma=spec.gamma)))
        else:
            try:
                fitted.append(("kernel", sj_bandwidth(sample)))
            except ValueError:
                fitted.append(("failed", None))

    metric_rows = []
    denom_rows = []
    for metric in task.metrics:
        denom_rows.append((metric, _step_metric(base, f, metric)))
        for idx, (kind, obj) in enumerate(fitted):
            if kind == "step":
                value = _step_metric(obj, f, metric)
            elif kind == "kernel":
                value = _kernel_metric(sample, obj, f, metric)
            else:
                value = None
            metric_rows.append((idx, metric, value))

    mse_rows = []
    mse_denom = []
    if task.p_grid:
        grid = np.array(task.p_grid)
        xq = f.quantile(grid)
        mse_denom = list(np.square(np.asarray(base.eval(xq)) - grid))
        for idx, (kind, obj) in enumerate(fitted):
            if kind == "step":
                err = np.square(np.asarray(obj.eval(xq)) - grid)
            elif kind == "kernel":
                err = np.square(np.asarray(ekcdf_eval(sample, obj, xq)) - grid)
            else:
                err = None
            if err is not None:
                mse_rows.extend((idx, j, float(e)) for j, e in enumerate(err))

    return task.n, task.rep, metric_rows, denom_rows, mse_rows, mse_denom


def worker_count() -> int:
    raw = os.environ.get("EHCDF_WORKERS", "").strip()
    if raw:
        count = int(raw)
        if count < 1:
            raise ValueError("EHCDF_WORKERS must be >= 1")
        return count
    return os.cpu_count() or 1


def _map_tasks(tasks: list[_RepTask], workers: int):
    if workers <= 1:
        return [run_replication(t) for t in tasks]
    chunk = max(1, math.ceil(len(tasks) / (8 * workers)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_replication, tasks, chunksize=chunk))


def _fmt_value(v) -> str:
    return "" if v is None else repr(float(v))


def _ratio_summary(pairs: list[tuple[float, float]]):
    """Paired ratio of means (percent) with its delta-method standard error."""
    if len(pairs) < 2:
        return None, None
    a = np.array([x for x, _ in pairs])
    b = np.array([y for _, y in pairs])
    a_bar = float(a.mean())
    b_bar = float(b.mean())
    if b_bar == 0.0:
        return None, None
    ratio = a_bar / b_bar
    r = a.size
    va = float(np.var(a, ddof=1))
    vb = float(np.var(b, ddof=1))
    cab = float(np.cov(a, b, ddof=1)[0, 1])
    var = (va - 2.0 * ratio * cab + ratio * ratio * vb) / r
    se = math.sqrt(max(0.0, var)) / b_bar
    return 100.0 * ratio, 100.0 * se


def dist_file_token(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9.]+", "_", label).strip("_")


class ExperimentResult(NamedTuple):
    experiment: ExperimentConfig
    records: list[tuple]
    summary: list[tuple]
    mse: list[tuple]
    series: list[tuple[str, list[float], list[float]]]


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentResult:
    specs = expand_estimators(cfg)
    label = cfg.label
    tasks = [
        _RepTask(cfg.distribution, label, cfg.index, cfg.seed, n, rep, specs,
                 cfg.metrics, cfg.mse_probability_grid)
        for n in cfg.n
        for rep in range(cfg.replications)
    ]
    results = _map_tasks(tasks, worker_count() if workers is None else workers)
    results.sort(key=lambda r: (r[0], r[1]))

    records = []
    metric_pairs: dict[tuple, list] = {}
    mse_sums: dict[tuple, tuple[float, float, int]] = {}
    for n, rep, metric_rows, denom_rows, mse_rows, mse_denom in results:
        denom = dict(denom_rows)
        for idx, metric, value in metric_rows:
            spec = specs[idx]
            records.append((
                label, spec.kind,
                "" if spec.gamma is None else repr(spec.gamma),
                n, rep, metric, _fmt_value(value),
            ))
            base_value = denom[metric]
            if value is not None and base_value is not None:
                metric_pairs.setdefault((idx, n, metric), []).append(
                    (value, base_value)
                )
        for idx, j, err in mse_rows:
            key = (idx, n, j)
            s, d, c = mse_sums.get(key, (0.0, 0.0, 0))
            mse_sums[key] = (s + err, d + mse_denom[j], c + 1)

    summary = []
    for idx, spec in enumerate(specs):
        for n in cfg.n:
            for metric in cfg.metrics:
                pairs = metric_pairs.get((idx, n, metric), [])
                ratio, se = _ratio_summary(pairs)
                if ratio is None:
                    summary.append((
                        label, spec.kind,
                        "" if spec.gamma is None else repr(spec.gamma),
                        n, metric, "", "", "missing",
                    ))
                    continue
                flag = "high-se" if se > _SE_FLAG_PP else ""
                summary.append((
                    label, spec.kind,
                    "" if spec.gamma is None else repr(spec.gamma),
                    n, metric, repr(ratio), repr(se), flag,
                ))

    mse = []
    series = []
    if cfg.mse_probability_grid:
        for idx, spec in enumerate(specs):
            for n in cfg.n:
                px, py = [], []
                for j, p in enumerate(cfg.mse_probability_grid):
                    got = mse_sums.get((idx, n, j))
                    if got is None:
                        continue
                    s, d, c = got
                    value = s / c
                    ratio = value / (d / c) if d > 0.0 else None
                    mse.append((
                        label, spec.kind,
                        "" if spec.gamma is None else repr(spec.gamma),
                        n, repr(p), repr(value), _fmt_value(ratio),
                    ))
                    if ratio is not None:
                        px.append(p)
                        py.append(ratio)
                if px:
                    name = spec.series_label + (f" n={n}" if len(cfg.n) > 1 else "")
                    series.append((name, px, py))
    return ExperimentResult(cfg, records, summary, mse, series)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows(rows)


def run_config(cfg: SimulationConfig, workers: int | None = None) -> list[str]:
    """Run every experiment and write records/summary/mse outputs.

    Experiments sharing an output_dir share records.csv and summary.csv.
    Returns the list of files written.
    """
    by_dir: dict[str, list[ExperimentResult]] = {}
    for exp in cfg.experiments:
        by_dir.setdefault(exp.output_dir, []).append(run_experiment(exp, workers))

    written = []
    for out_dir, results in by_dir.items():
        os.makedirs(out_dir, exist_ok=True)
        records = [row for res in results for row in res.records]
        summary = [row for res in results for row in res.summary]
        if any(res.experiment.metrics for res in results):
            rec_path = os.path.join(out_dir, "records.csv")
            _write_csv(rec_path, RECORD_FIELDS, records)
            written.append(rec_path)
            sum_path = os.path.join(out_dir, "summary.csv")
            _write_csv(sum_path, SUMMARY_FIELDS, summary)
            written.append(sum_path)
        for res in results:
            if not res.mse:
                continue
            token = dist_file_token(res.experiment.label)
            mse_path = os.path.join(out_dir, f"mse_{token}.csv")
            _write_csv(mse_path, MSE_FIELDS, res.mse)
            written.append(mse_path)
            svg = line_plot(
                res.series,
                x_label="p",
                y_label="MSE ratio to the ECDF",
                title=f"Pointwise MSE ratio at the p-quantile: {res.experiment.label}",
                hline=1.0,
            )
            svg_path = os.path.join(out_dir, f"mse_{token}.svg")
            with open(svg_path, "w", newline="", encoding="utf-8") as fh:
                fh.write(svg)
            written.append(svg_path)
    return written

"""Strict JSON configuration for the simulation harness.

Unknown keys are rejected so a typo fails loudly instead of silently
running the default.  One distribution per experiment; the paired design
draws one sample per replication and evaluates every requested estimator
on it.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

from .distributions import DistributionSpec, catalog_lookup, catalog_names, mixture_law

ESTIMATOR_KINDS = ("ecdf", "ehcdf", "ekcdf")
METRIC_NAMES = ("L1", "L2", "Linf", "W1", "W2")

_EXPERIMENT_KEYS = {
    "distribution", "n", "gamma", "estimators", "metrics",
    "mse_probability_grid", "replications", "seed", "output_dir",
}
_DISTRIBUTION_KEYS = {"name", "params", "components"}


class ConfigError(ValueError):
    """Raised when a configuration file fails validation."""


def build_distribution(dcfg: dict) -> DistributionSpec:
    """Turn a validated distribution config dict into a law object."""
    name = dcfg["name"]
    if name == "mixture":
        first, second = (build_distribution(c) for c in dcfg["components"])
        return mixture_law(first, second)
    return catalog_lookup(name, dcfg.get("params", []))


def _check_distribution(dcfg, where: str) -> dict:
    if not isinstance(dcfg, dict):
        raise ConfigError(f"{where}: distribution must be an object")
    unknown = set(dcfg) - _DISTRIBUTION_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown distribution keys {sorted(unknown)}")
    name = dcfg.get("name")
    if name == "mixture":
        comps = dcfg.get("components")
        if not isinstance(comps, list) or len(comps) != 2:
            raise ConfigError(f"{where}: mixture needs exactly 2 components")
        if "params" in dcfg:
            raise ConfigError(f"{where}: mixture takes components, not params")
        return {
            "name": "mixture",
            "components": [
                _check_distribution(c, f"{where}.components[{i}]")
                for i, c in enumerate(comps)
            ],
        }
    if name not in catalog_names():
        raise ConfigError(
            f"{where}: unknown distribution {name!r}; choose from {catalog_names()}"
        )
    params = dcfg.get("params", [])
    if not isinstance(params, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in params
    ):
        raise ConfigError(f"{where}: params must be a list of numbers")
    out = {"name": name, "params": [float(p) for p in params]}
    build_distribution(out)  # parameter-range errors surface at load time
    return out


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where} must be a nonempty list")
    out = []
    for v in value:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ConfigError(f"{where} entries must be integers >= 1")
        out.append(v)
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    distribution: dict
    n: tuple[int, ...]
    gamma: tuple[float, ...]
    estimators: tuple[str, ...]
    metrics: tuple[str, ...]
    mse_probability_grid: tuple[float, ...]
    replications: int
    seed: int
    output_dir: str
    index: int = 0

    @property
    def label(self) -> str:
        return build_distribution(self.distribution).label


@dataclass(frozen=True)
class SimulationConfig:
    experiments: tuple[ExperimentConfig, ...] = field(default_factory=tuple)


def _check_experiment(e, idx: int) -> ExperimentConfig:
    where = f"experiments[{idx}]"
    if not isinstance(e, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(e) - _EXPERIMENT_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = {"distribution", "n", "estimators", "replications", "seed",
               "output_dir"} - set(e)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")

    dist = _check_distribution(e["distribution"], f"{where}.distribution")
    ns = _int_list(e["n"], f"{where}.n")

    estimators = e["estimators"]
    if (not isinstance(estimators, list) or not estimators
            or any(s not in ESTIMATOR_KINDS for s in estimators)):
        raise ConfigError(
            f"{where}.estimators must be a nonempty subset of {ESTIMATOR_KINDS}"
        )
    estimators = list(dict.fromkeys(estimators))

    gammas = e.get("gamma", [])
    if not isinstance(gammas, list) or not all(
        isinstance(g, (int, float)) and not isinstance(g, bool) for g in gammas
    ):
        raise ConfigError(f"{where}.gamma must be a list of numbers")
    gammas = [float(g) for g in gammas]
    if "ehcdf" in estimators and not gammas:
        raise ConfigError(f"{where}: estimator 'ehcdf' needs a nonempty gamma list")
    for g in gammas:
        if not 1.0 <= g <= 1.5:
            print(
                f"warning: {where}.gamma={g:g} is outside [1, 1.5], the range "
                "the estimator is designed for",
                file=sys.stderr,
            )

    metrics = e.get("metrics", [])
    if not isinstance(metrics, list) or any(m not in METRIC_NAMES for m in metrics):
        raise ConfigError(f"{where}.metrics must be a subset of {METRIC_NAMES}")
    metrics = list(dict.fromkeys(metrics))

    grid = e.get("mse_probability_grid", [])
    if not isinstance(grid, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) and 0.0 < p < 1.0
        for p in grid
    ):
        raise ConfigError(
            f"{where}.mse_probability_grid must be a list strictly inside (0, 1)"
        )
    grid = [float(p) for p in grid]
    if not metrics and not grid:
        raise ConfigError(
            f"{where}: nothing to do (empty metrics and mse_probability_grid)"
        )

    reps = e["replications"]
    if not isinstance(reps, int) or isinstance(reps, bool) or reps < 1:
        raise ConfigError(f"{where}.replications must be an integer >= 1")
    seed = e["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool) or not (
        -(2**63) <= seed < 2**64
    ):
        raise ConfigError(f"{where}.seed must be a 64-bit integer")
    out_dir = e["output_dir"]
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError(f"{where}.output_dir must be a nonempty path string")

    return ExperimentConfig(
        distribution=dist,
        n=tuple(ns),
        gamma=tuple(gammas),
        estimators=tuple(estimators),
        metrics=tuple(metrics),
        mse_probability_grid=tuple(grid),
        replications=reps,
        seed=seed,
        output_dir=out_dir,
        index=idx,
    )


def parse_config(obj) -> SimulationConfig:
    if not isinstance(obj, dict):
        raise ConfigError("top level must be an object")
    unknown = set(obj) - {"experiments"}
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    exps = obj.get("experiments")
    if not isinstance(exps, list) or not exps:
        raise ConfigError("'experiments' must be a nonempty list")
    return SimulationConfig(
        experiments=tuple(_check_experiment(e, i) for i, e in enumerate(exps))
    )


def load_config(path: str) -> SimulationConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return parse_config(obj)

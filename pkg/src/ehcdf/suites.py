"""Named self-check suites behind the CLI: invariants with margins.

Each suite returns rows (check, value, threshold, passed); the CLI renders
them as CSV and exits nonzero when any check fails.  These are the fast
standing checks; the full-size distributional versions live in the test
suite.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .cdf_model import StepCdf, ecdf, lp_distance_step_cont, lp_distance_step_step
from .distributions import _box_muller, normal_law, substream
from .hoeffding import ehcdf, h_m_step, hoeffding_cdf, mu_true
from .l_functionals import h_m_stats, l_stats
from .metrics import ks_two_sample
from .resampling import LimitSampler, bootstrap_ehcdf

L1_RATE_CONSTANT = 1.6147438534296694  # integral of sqrt(t(1-t)) dQ, N(0,1)


class CheckResult(NamedTuple):
    check: str
    value: float
    threshold: float
    passed: bool


def _upper(check: str, value: float, threshold: float) -> CheckResult:
    return CheckResult(check, value, threshold, value < threshold)


def random_step_cdf(rng: np.random.Generator, max_atoms: int = 25) -> StepCdf:
    count = 1 + int(rng.random() * max_atoms)
    locations = 2.0 * _box_muller(rng, count)
    masses = 0.05 + rng.random(count)
    return StepCdf(locations, masses / masses.sum())


def suite_identities(seed: int, samples: int = 500) -> list[CheckResult]:
    worst = {"mean": 0.0, "mad": 0.0, "skew": 0.0, "kurt": 0.0}
    for i in range(samples):
        rng = substream(seed, "suite", "identities", i)
        n = 2 + int(rng.random() * 39)
        values = 1.5 * _box_muller(rng, n) + 0.3
        m = 2 + i % 59
        got = l_stats(h_m_step(ecdf(values), m))
        want = h_m_stats(l_stats(ecdf(values)), m)
        worst["mean"] = max(worst["mean"], abs(got.mean - want.mean))
        worst["mad"] = max(worst["mad"], abs(got.mad - want.mad))
        if want.skew is not None and got.skew is not None:
            worst["skew"] = max(worst["skew"], abs(got.skew - want.skew))
            worst["kurt"] = max(worst["kurt"], abs(got.kurt - want.kurt))
    return [
        _upper(f"smoothing identity: {name}", value, 1e-10)
        for name, value in worst.items()
    ]


def suite_contraction(seed: int, pairs: int = 200) -> list[CheckResult]:
    excess = -math.inf
    for i in range(pairs):
        rng = substream(seed, "suite", "contraction", i)
        f = random_step_cdf(rng)
        g = random_step_cdf(rng)
        l1 = lp_distance_step_step(f, g, 1)
        for m in (1, 5, 40):
            hf = h_m_step(f, m)
            hg = h_m_step(g, m)
            for p in (1, 2, 3):
                excess = max(excess, lp_distance_step_step(hf, hg, p) ** p - l1)
    return [_upper("smoothing contraction: max excess over the L1 bound",
                   excess, 1e-9)]


def suite_rates(seed: int) -> list[CheckResult]:
    del seed  # deterministic
    f = normal_law(0.0, 1.0)
    scaled = []
    for m in (4, 16, 64, 256):
        dist = lp_distance_step_cont(hoeffding_cdf(mu_true(f, m)), f, 1)
        scaled.append(math.sqrt(m) * dist)
    rows = [
        _upper("L1 rate: max of sqrt(m)*||F_m - F||_1 over the m grid",
               max(scaled), L1_RATE_CONSTANT)
    ]
    growth = max(
        scaled[i + 1] / scaled[i] for i in range(len(scaled) - 1)
    )
    rows.append(_upper("L1 rate: max stepwise growth of the scaled error",
                       growth, 1.02))
    return rows


def suite_limits(seed: int, reps: int = 200, draws: int = 2000) -> list[CheckResult]:
    f = normal_law(0.0, 1.0)
    n, m = 1000, 5
    target = hoeffding_cdf(mu_true(f, m))
    observed = np.empty(reps)
    for i in range(reps):
        rng = substream(seed, "suite", "limits", i)
        sample = f.sample(rng, n)
        observed[i] = math.sqrt(n) * lp_distance_step_step(
            ehcdf(sample, m=m), target, 1
        )
    sampler = LimitSampler(f, m=m)
    limit = sampler.sample("sum_abs_L1", draws, substream(seed, "suite", "limits", "ref"))
    return [_upper("fixed-m L1 limit: KS to the bridge functional",
                   ks_two_sample(observed, limit), 0.12)]


def suite_bootstrap(seed: int, draws: int = 250, ref_draws: int = 2000) -> list[CheckResult]:
    f = normal_law(0.0, 1.0)
    n, m = 1000, 5
    sample = f.sample(substream(seed, "suite", "bootstrap", "data"), n)
    center = ehcdf(sample, m=m)
    observed = np.empty(draws)
    for i in range(draws):
        rng = substream(seed, "suite", "bootstrap", i)
        observed[i] = math.sqrt(n) * lp_distance_step_step(
            bootstrap_ehcdf(sample, m, rng), center, 1
        )
    sampler = LimitSampler(f, m=m)
    limit = sampler.sample(
        "sum_abs_L1", ref_draws, substream(seed, "suite", "bootstrap", "ref")
    )
    return [_upper("bootstrap L1 law: KS to the bridge functional",
                   ks_two_sample(observed, limit), 0.12)]


SUITES: dict[str, Callable[[int], list[CheckResult]]] = {
    "identities": suite_identities,
    "contraction": suite_contraction,
    "rates": suite_rates,
    "limits": suite_limits,
    "bootstrap": suite_bootstrap,
}


def run_suite(name: str, seed: int = 12345) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    return SUITES[name](seed)

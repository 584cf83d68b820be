"""Bootstrap resampling and simulation from the limiting laws.

The limiting laws of the scaled distances between the smoothed empirical
CDF and its population version are functionals of a Brownian bridge B
through the quantile process Q(t) = B(t) / f(F^-1(t)) and the projected
normals Z_j = integral of Q against the j-th order-statistic beta density.
Bridges are simulated as scaled random-walk bridges on a grid of K steps
and the integrals discretized by the rectangle rule on the interior grid.
"""

from __future__ import annotations

import numpy as np

from .cdf_model import StepCdf
from .distributions import DistributionSpec, _box_muller
from .hoeffding import mu_from_cum
from .special_fn import beta_pdf_grid

_DEFAULT_STEPS = 4096


def bootstrap_counts(rng: np.random.Generator, n: int) -> np.ndarray:
    """Multinomial(n; 1/n, ..., 1/n) occupancy counts via uniform draws."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idx = np.minimum((rng.random(n) * n).astype(np.int64), n - 1)
    return np.bincount(idx, minlength=n)


def bootstrap_ecdf(values, rng: np.random.Generator) -> StepCdf:
    """Empirical CDF of one bootstrap resample of the given sample."""
    v = np.sort(np.asarray(values, dtype=float))
    counts = bootstrap_counts(rng, v.size)
    keep = counts > 0
    return StepCdf(v[keep], counts[keep] / v.size)


def bootstrap_ehcdf(values, m: int, rng: np.random.Generator) -> StepCdf:
    """Smoothed (m-step) estimator computed from one bootstrap resample."""
    v = np.sort(np.asarray(values, dtype=float))
    counts = bootstrap_counts(rng, v.size)
    cum = np.concatenate([[0.0], np.cumsum(counts)]) / v.size
    cum[-1] = 1.0
    mu = mu_from_cum(v, cum, m)
    return StepCdf(mu, np.full(m, 1.0 / m))


def brownian_bridge(rng: np.random.Generator, steps: int = _DEFAULT_STEPS):
    """Random-walk bridge on t = 0, 1/K, ..., 1; returns (t, B)."""
    if steps < 2:
        raise ValueError("need at least 2 steps")
    walk = np.cumsum(_box_muller(rng, steps))
    t = np.arange(steps + 1) / steps
    b = np.empty(steps + 1)
    b[0] = 0.0
    b[1:] = (walk - t[1:] * walk[-1]) / np.sqrt(steps)
    b[-1] = 0.0
    return t, b


class LimitSampler:
    """Monte Carlo draws from the limit laws for one reference law.

    Precomputes the interior grid t_i = i/K, the quantile-density weights
    w_i = 1 / f(F^-1(t_i)), and (when m is given) the beta-density matrix
    used for Z_j, so repeated draws cost one bridge plus one mat-vec.
    """

    def __init__(self, f: DistributionSpec, m: int | None = None,
                 steps: int = _DEFAULT_STEPS):
        if not f.has_density:
            raise ValueError(f"{f.label} has no density: limit laws undefined")
        self.f = f
        self.steps = steps
        self.m = m
        self.t_interior = np.arange(1, steps) / steps
        q = f.quantile(self.t_interior)
        dens = np.asarray(f.pdf(q), dtype=float)
        if np.any(dens <= 0.0):
            raise ValueError("density vanishes on the interior grid")
        self.weights = 1.0 / dens
        if m is not None:
            if m < 1:
                raise ValueError("m must be >= 1")
            self._z_matrix = beta_pdf_grid(m, self.t_interior) * (
                self.weights / steps
            )

    def bridge_interior(self, rng: np.random.Generator) -> np.ndarray:
        _, b = brownian_bridge(rng, self.steps)
        return b[1:-1]

    def z_from_bridge(self, bridge_interior: np.ndarray) -> np.ndarray:
        """Z_j = integral of B(t)/f(F^-1(t)) dF_{B_{j:m}}(t), j = 1..m."""
        if self.m is None:
            raise ValueError("sampler was built without m")
        return self._z_matrix @ bridge_interior

    def draw(self, kind: str, rng: np.random.Generator,
             p: float | None = None) -> float:
        b = self.bridge_interior(rng)
        if kind == "sum_abs_L1":
            # limit of sqrt(n) * ||F_nm - F_m||_1 at fixed m
            z = self.z_from_bridge(b)
            return float(np.sum(np.abs(z)) / self.m)
        if kind == "sum_abs_Lp":
            # limit of sqrt(n) * ||F_nm - F_m||_p^p at fixed m
            if p is None:
                raise ValueError("kind 'sum_abs_Lp' needs p")
            z = self.z_from_bridge(b)
            return float(np.sum(np.abs(z)) / self.m**p)
        if kind == "wp_power":
            # limit of n^(p/2) * W_p^p(F_nm, F_m) at fixed m
            if p is None:
                raise ValueError("kind 'wp_power' needs p")
            z = self.z_from_bridge(b)
            return float(np.mean(np.abs(z) ** p))
        if kind == "int_abs_Q":
            if not self.f.property_q:
                raise ValueError(
                    f"{self.f.label} fails the L1 integrability condition"
                )
            return float(np.sum(np.abs(b) * self.weights) / self.steps)
        if kind == "int_Q_squared":
            if not self.f.property_q2:
                raise ValueError(
                    f"{self.f.label} fails the W2 integrability condition"
                )
            return float(np.sum((b * self.weights) ** 2) / self.steps)
        raise ValueError(f"unknown limit kind {kind!r}")

    def sample(self, kind: str, reps: int, rng: np.random.Generator,
               p: float | None = None) -> np.ndarray:
        return np.array([self.draw(kind, rng, p) for _ in range(reps)])

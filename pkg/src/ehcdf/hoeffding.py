"""The m-step smoothing operator on CDFs and its empirical estimator.

A CDF G is mapped to a step CDF with mass 1/m at the expected value of each
of the m order statistics of a G-sample, mu_j = integral Q_G(t) dF_{B_{j:m}}.
Applied to an empirical CDF this gives the smoothed estimator whose atoms
are L-statistics of the sorted sample; applied to the true law it gives the
population m-step CDF used as the centering in the limit theorems.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .cdf_model import StepCdf
from .quadrature import QuadratureError, integrate_gl
from .special_fn import (
    BetaParams,
    beta_pdf,
    binomial_pmf_log,
    regularized_incomplete_beta,
)

# Above this many grid entries the order-statistic CDF matrix is produced
# through the binomial-tail representation instead of per-row continued
# fractions (absolute error ~ m * eps, i.e. ~4e-13 at m = 4000).
# Continued fractions win on accuracy for tiny grids, the cumulative
# binomial route wins on speed everywhere else (flat O(m) numpy per value).
_GRID_SWITCH = 4_000
_GRID_CHUNK = 512


class InternalConsistencyError(RuntimeError):
    """A mathematically guaranteed property failed beyond tolerance."""


def m_from_gamma(n: int, gamma: float) -> int:
    """Jump count m = round(n^gamma), at least 1 (half rounds up)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return max(1, int(math.floor(n**gamma + 0.5)))


def beta_cdf_grid(m: int, x) -> np.ndarray:
    """Matrix F_{B_{j:m}}(x_i), shape (m, len(x)).

    Small grids evaluate the regularized incomplete beta row by row; large
    grids use P(U_{j:m} <= x) = P(Bin(m, x) >= j) with a log-space pmf and
    reversed cumulative sums, chunked to bound memory.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("grid must be 1-d")
    if m < 1:
        raise ValueError("m must be >= 1")
    if m * x.size <= _GRID_SWITCH:
        out = np.empty((m, x.size))
        for j in range(1, m + 1):
            out[j - 1] = regularized_incomplete_beta(j, m - j + 1, x)
        return out
    out = np.empty((m, x.size))
    for start in range(0, x.size, _GRID_CHUNK):
        xs = x[start : start + _GRID_CHUNK]
        inner = (xs > 0.0) & (xs < 1.0)
        block = np.zeros((m, xs.size))
        if inner.any():
            pmf = np.exp(binomial_pmf_log(m, xs[inner]))
            upper = np.cumsum(pmf[::-1], axis=0)[::-1]
            block[:, inner] = np.clip(upper[1:], 0.0, 1.0)
        block[:, xs >= 1.0] = 1.0
        out[:, start : start + xs.size] = block
    return out


def mu_from_cum(values: np.ndarray, cum: np.ndarray, m: int) -> np.ndarray:
    grid = beta_cdf_grid(m, cum)
    mu = np.diff(grid, axis=1) @ values
    scale = max(1.0, float(np.max(np.abs(mu))))
    if np.any(np.diff(mu) < -1e-9 * scale):
        raise InternalConsistencyError(
            "expected order statistics came out non-monotone"
        )
    return mu


def mu_hat(values, m: int) -> np.ndarray:
    """Estimated expected order statistics of an m-sample.

    mu_hat[j-1] = sum_i X_(i) * (F_{B_{j:m}}(i/n) - F_{B_{j:m}}((i-1)/n))
    over the sorted sample X_(1) <= ... <= X_(n).
    """
    v = np.sort(np.asarray(values, dtype=float))
    if v.ndim != 1 or v.size == 0:
        raise ValueError("sample must be a nonempty 1-d array")
    if not np.all(np.isfinite(v)):
        raise ValueError("sample values must be finite")
    if m < 1:
        raise ValueError("m must be >= 1")
    cum = np.arange(v.size + 1) / v.size
    cum[-1] = 1.0
    return mu_from_cum(v, cum, m)


def mu_from_step(g: StepCdf, m: int) -> np.ndarray:
    """Expected order statistics of an m-sample drawn from a step CDF."""
    if m < 1:
        raise ValueError("m must be >= 1")
    cum = np.concatenate([[0.0], g.cum])
    return mu_from_cum(g.locations, cum, m)


def hoeffding_cdf(mu) -> StepCdf:
    """Step CDF with mass 1/m at each entry of mu (ties merge)."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or mu.size == 0:
        raise ValueError("mu must be a nonempty 1-d array")
    return StepCdf(mu, np.full(mu.size, 1.0 / mu.size))


def ehcdf(values, m: int | None = None, gamma: float | None = None) -> StepCdf:
    """The smoothed empirical CDF with m = round(n^gamma) jumps (or given m)."""
    v = np.asarray(values, dtype=float)
    if (m is None) == (gamma is None):
        raise ValueError("give exactly one of m and gamma")
    if m is None:
        m = m_from_gamma(v.size, gamma)
    return hoeffding_cdf(mu_hat(v, m))


def h_m_step(g: StepCdf, m: int) -> StepCdf:
    """The m-step smoothing operator applied to a step CDF."""
    return hoeffding_cdf(mu_from_step(g, m))


def beta_average(
    fn: Callable[[np.ndarray], np.ndarray],
    params: BetaParams,
    rtol: float = 1e-8,
) -> float:
    """integral_0^1 fn(t) f_{B_{j:m}}(t) dt by composite Gauss-Legendre.

    The partition unions dyadic points toward both endpoints (fn may be an
    unbounded quantile function) with points spaced sd/2 across the beta
    bump (which is sharp for large m), then is halved globally until the
    value changes by less than rtol relative to max(1, |value|).

    fn takes double arguments, so the sliver (1 - 2**-53, 1) is out of
    reach; with a tail as heavy as index 2 (e.g. a t law with nu = 2) the
    mass there is of order 1e-8 * m, and such laws need a looser rtol.
    """
    j, m = params
    mean = j / (m + 1.0)
    sd = math.sqrt(j * (m - j + 1.0) / ((m + 1.0) ** 2 * (m + 2.0)))
    dy = 2.0 ** -np.arange(1, 101)
    bump = mean + 0.5 * sd * np.arange(-24, 25)
    pts = np.concatenate([[0.0, 1.0], dy, 1.0 - dy, bump])
    pts = np.unique(np.clip(pts, 0.0, 1.0))

    def g(t: np.ndarray) -> np.ndarray:
        return np.asarray(fn(t), dtype=float) * beta_pdf(params, t)

    val = integrate_gl(g, pts)
    for _ in range(8):
        pts = np.sort(np.concatenate([pts, 0.5 * (pts[:-1] + pts[1:])]))
        new = integrate_gl(g, pts)
        if abs(new - val) <= rtol * max(1.0, abs(new)):
            return new
        val = new
    raise QuadratureError(
        f"order-statistic average failed to settle for j={j}, m={m}"
    )


def mu_true(f, m: int, rtol: float = 1e-8) -> np.ndarray:
    """Expected order statistics mu_j = integral Q(t) f_{B_{j:m}}(t) dt.

    f is a law with a vectorized quantile; accuracy is the beta_average
    contract per entry.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    out = np.array([
        beta_average(f.quantile, BetaParams(j, m), rtol) for j in range(1, m + 1)
    ])
    scale = max(1.0, float(np.max(np.abs(out))))
    if np.any(np.diff(out) < -1e-9 * scale):
        raise InternalConsistencyError("true order-statistic means non-monotone")
    return out


class UnitStep:
    """Step function on (0, 1] constant on ((j-1)/m, j/m], j = 1..m."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("values must be a nonempty 1-d array")

    @property
    def m(self) -> int:
        return self.values.size

    def eval(self, t):
        ta = np.asarray(t, dtype=float)
        if np.any(ta <= 0.0) or np.any(ta > 1.0):
            raise ValueError("argument must lie in (0, 1]")
        idx = np.minimum(np.ceil(ta * self.m).astype(int) - 1, self.m - 1)
        out = self.values[np.maximum(idx, 0)]
        return out if np.ndim(t) else float(out)

    def norm(self, p) -> float:
        """L^p norm on (0, 1); p = inf gives the sup of |values|."""
        p = float(p)
        if math.isinf(p):
            return float(np.max(np.abs(self.values)))
        if p < 1:
            raise ValueError("p must be >= 1")
        return float(np.mean(np.abs(self.values) ** p) ** (1.0 / p))


def i_m_apply(
    h: Callable[[np.ndarray], np.ndarray], m: int, rtol: float = 1e-8
) -> UnitStep:
    """Quantile-side operator: block j carries integral h(t) dF_{B_{j:m}}(t).

    Satisfies the norm contraction ||I_m h||_p <= ||h||_p and the duality
    (I_m applied to G^{-1}) = (m-step smoothing of G)^{-1}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return UnitStep([beta_average(h, BetaParams(j, m), rtol) for j in range(1, m + 1)])

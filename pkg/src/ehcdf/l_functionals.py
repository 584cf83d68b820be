"""Linear functionals of quantile functions and their weight calculus.

T_w(G) = integral_0^1 G^{-1}(p) w(p) dp, evaluated exactly for step CDFs
through the antiderivative of w.  The first four shifted Legendre weights
give the familiar location/spread/shape summaries; the closure map sends a
weight w to the beta mixture whose functional on G matches the functional
of w on the m-step smoothing of G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cdf_model import StepCdf
from .hoeffding import beta_cdf_grid
from .special_fn import beta_pdf_grid


class WeightFunction:
    """Integrable weight on (0, 1) with an exact cumulative.

    Three kinds: 'polynomial' (coefficient vector, ascending), 'tabulated'
    (piecewise linear through grid points spanning [0, 1]), and 'beta_mix'
    (sum_j c_j f_{B_{j:m}}, the image of the closure map, whose cumulative
    is a sum of order-statistic CDFs and therefore exact).
    """

    __slots__ = ("kind", "coeffs", "grid", "values", "m")

    def __init__(self, kind, coeffs=None, grid=None, values=None, m=None):
        self.kind = kind
        self.coeffs = None if coeffs is None else np.asarray(coeffs, dtype=float)
        self.grid = None if grid is None else np.asarray(grid, dtype=float)
        self.values = None if values is None else np.asarray(values, dtype=float)
        self.m = m

    @classmethod
    def polynomial(cls, coeffs) -> "WeightFunction":
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("need a nonempty 1-d coefficient vector")
        return cls("polynomial", coeffs=c)

    @classmethod
    def tabulated(cls, grid, values) -> "WeightFunction":
        g = np.asarray(grid, dtype=float)
        v = np.asarray(values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape or g.size < 2:
            raise ValueError("grid and values must be equal-length, size >= 2")
        if g[0] != 0.0 or g[-1] != 1.0 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must increase strictly from 0 to 1")
        return cls("tabulated", grid=g, values=v)

    @classmethod
    def beta_mixture(cls, m: int, coeffs) -> "WeightFunction":
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (m,):
            raise ValueError("need one coefficient per mixture component")
        return cls("beta_mix", coeffs=c, m=m)

    def evaluate(self, p):
        pa = np.atleast_1d(np.asarray(p, dtype=float))
        if self.kind == "polynomial":
            out = np.polynomial.polynomial.polyval(pa, self.coeffs)
        elif self.kind == "tabulated":
            out = np.interp(pa, self.grid, self.values)
        else:
            out = self.coeffs @ beta_pdf_grid(self.m, pa)
        return out if np.ndim(p) else float(out[0])

    def cumulative(self, u):
        """W(u) = integral_0^u w, vectorized, W(0) = 0."""
        ua = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any((ua < 0) | (ua > 1)):
            raise ValueError("cumulative argument must lie in [0, 1]")
        if self.kind == "polynomial":
            anti = np.concatenate([[0.0], self.coeffs / np.arange(1, self.coeffs.size + 1)])
            out = np.polynomial.polynomial.polyval(ua, anti)
        elif self.kind == "tabulated":
            steps = 0.5 * (self.values[1:] + self.values[:-1]) * np.diff(self.grid)
            prefix = np.concatenate([[0.0], np.cumsum(steps)])
            idx = np.clip(np.searchsorted(self.grid, ua, side="right") - 1, 0, self.grid.size - 2)
            g0 = self.grid[idx]
            frac = ua - g0
            v0 = self.values[idx]
            vu = np.interp(ua, self.grid, self.values)
            out = prefix[idx] + 0.5 * (v0 + vu) * frac
        else:
            out = self.coeffs @ beta_cdf_grid(self.m, ua)
        return out if np.ndim(u) else float(out[0])


def shifted_legendre_weight(r: int) -> WeightFunction:
    """w_r(u) = sum_k (-1)^(r-k) C(r,k) C(r+k,k) u^k (degree r, order r+1).

    w_0 = 1, w_1 = 2u - 1, w_2 = 6u^2 - 6u + 1, ...; orthogonal on (0,1).
    """
    if r < 0:
        raise ValueError("degree must be >= 0")
    coeffs = [
        (-1.0) ** (r - k) * math.comb(r, k) * math.comb(r + k, k)
        for k in range(r + 1)
    ]
    return WeightFunction.polynomial(coeffs)


def t_w(g: StepCdf, w: WeightFunction) -> float:
    """T_w(G) = integral G^{-1}(p) w(p) dp, exact for step CDFs.

    The quantile is constant between cumulative cut points, so the integral
    collapses to a weighted sum of cumulative-weight increments.
    """
    cuts = np.concatenate([[0.0], g.cum])
    wc = np.asarray(w.cumulative(cuts), dtype=float)
    return float(g.locations @ np.diff(wc))


def p_m_weight(w: WeightFunction, m: int) -> WeightFunction:
    """Closure map: the weight whose functional on G equals T_w(H_m G).

    P_m[w](p) = sum_j f_{B_{j:m}}(p) * integral of w over ((j-1)/m, j/m].
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    blocks = np.asarray(w.cumulative(np.arange(m + 1) / m), dtype=float)
    return WeightFunction.beta_mixture(m, np.diff(blocks))


def l_moment(g: StepCdf, r: int) -> float:
    """The r-th linear moment: T with the degree r-1 shifted Legendre weight."""
    if r < 1:
        raise ValueError("order must be >= 1")
    return t_w(g, shifted_legendre_weight(r - 1))


@dataclass(frozen=True)
class LStats:
    """First four L-functional summaries of a step CDF.

    mad is the mean absolute difference (2 lambda_2).  The two ratios are
    None when the spread is numerically zero (degenerate CDF): undefined,
    as opposed to a numeric failure which raises.
    """

    mean: float
    mad: float
    skew: float | None
    kurt: float | None


def l_stats(g: StepCdf) -> LStats:
    lam = [l_moment(g, r) for r in (1, 2, 3, 4)]
    scale = max(1.0, abs(lam[0]), float(np.max(np.abs(g.locations))))
    if abs(lam[1]) <= 1e-14 * scale:
        return LStats(mean=lam[0], mad=2.0 * lam[1], skew=None, kurt=None)
    return LStats(
        mean=lam[0],
        mad=2.0 * lam[1],
        skew=lam[2] / lam[1],
        kurt=lam[3] / lam[1],
    )


def h_m_stats(stats: LStats, m: int) -> LStats:
    """Exact finite-sample effect of the m-step smoothing on the summaries.

    The mean is preserved; the MAD shrinks by (m-1)/m; the skewness ratio
    scales by (m-2)/m; the kurtosis ratio maps affinely to
    ((m-2)(m-3)/m^2) * kurt - 1/m^2.  For m = 1 everything collapses to a
    point mass, so the ratios become undefined.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return LStats(mean=stats.mean, mad=0.0, skew=None, kurt=None)
    skew = None if stats.skew is None else (m - 2.0) / m * stats.skew
    kurt = (
        None
        if stats.kurt is None
        else (m - 2.0) * (m - 3.0) / m**2 * stats.kurt - 1.0 / m**2
    )
    return LStats(mean=stats.mean, mad=(m - 1.0) / m * stats.mad,
                  skew=skew, kurt=kurt)

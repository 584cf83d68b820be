"""Deterministic quadrature building blocks.

Composite Gauss-Legendre on explicit partitions (nodes never touch segment
endpoints, so integrable endpoint singularities are safe) and a batched
adaptive Simpson rule with a hard depth cap.  Callers that integrate toward
an endpoint where the integrand may fail to be integrable use the dyadic
piece loop here, which reports divergence instead of looping forever.
"""

from __future__ import annotations

import functools
from typing import Callable

import numpy as np


class QuadratureError(RuntimeError):
    """A quadrature routine could not certify its tolerance."""


class DivergentIntegralError(QuadratureError):
    """Dyadic endpoint pieces do not decay: the integral diverges."""


@functools.lru_cache(maxsize=None)
def gauss_legendre_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (-1, 1); cached, deterministic."""
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def integrate_gl(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: np.ndarray,
    order: int = 64,
) -> float:
    """Composite Gauss-Legendre integral of f over a sorted partition.

    f must accept a flat ndarray of interior nodes.  The partition endpoints
    themselves are never evaluated.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 1 or pts.size < 2:
        raise ValueError("breakpoints must be a 1-d array with >= 2 entries")
    x, w = gauss_legendre_nodes(order)
    lo = pts[:-1]
    hi = pts[1:]
    # A segment narrower than ~1 ulp has no representable interior point;
    # its contribution is below rounding anyway, so skip it.
    inner_lo = np.nextafter(lo, hi)
    inner_hi = np.nextafter(hi, lo)
    keep = (lo < hi) & (inner_lo <= inner_hi)
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        return 0.0
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    np.clip(nodes, inner_lo[keep, None], inner_hi[keep, None], out=nodes)
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(half * (vals @ w)))


def adaptive_simpson_segments(
    f: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: np.ndarray,
    max_depth: int = 50,
) -> float:
    """Sum of adaptive Simpson integrals of f over many segments at once.

    Classic halving with the 1/15 error estimate; intervals at the depth cap
    are accepted with their extrapolated value (cap 50 puts the width at the
    rounding floor anyway).  All pending intervals across all segments are
    evaluated in one f call per round, which keeps single-core numpy fast.
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    tols = np.broadcast_to(np.asarray(tol, dtype=float), lo.shape).copy()
    if np.any(hi < lo):
        raise ValueError("need lo <= hi per segment")
    keep = hi > lo
    a_ = lo[keep]
    b_ = hi[keep]
    tols = tols[keep]
    if a_.size == 0:
        return 0.0
    m_ = 0.5 * (a_ + b_)
    fv = np.asarray(f(np.concatenate([a_, m_, b_])), dtype=float)
    fa, fm, fb = np.split(fv, 3)
    depth = np.zeros(a_.size, dtype=int)
    total = 0.0
    while a_.size:
        lm = 0.5 * (a_ + m_)
        rm = 0.5 * (m_ + b_)
        fv = np.asarray(f(np.concatenate([lm, rm])), dtype=float)
        flm, frm = np.split(fv, 2)
        h = b_ - a_
        whole = h / 6.0 * (fa + 4.0 * fm + fb)
        left = h / 12.0 * (fa + 4.0 * flm + fm)
        right = h / 12.0 * (fm + 4.0 * frm + fb)
        err = (left + right - whole) / 15.0
        accept = (np.abs(err) <= tols) | (depth >= max_depth)
        total += float(np.sum((left + right + err)[accept]))
        r = ~accept
        a_ = np.concatenate([a_[r], m_[r]])
        b_ = np.concatenate([m_[r], b_[r]])
        m_ = np.concatenate([lm[r], rm[r]])
        fa = np.concatenate([fa[r], fm[r]])
        fb = np.concatenate([fm[r], fb[r]])
        fm = np.concatenate([flm[r], frm[r]])
        tols = np.concatenate([tols[r] / 2.0, tols[r] / 2.0])
        depth = np.concatenate([depth[r] + 1, depth[r] + 1])
    return total


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    max_depth: int = 50,
) -> float:
    """Adaptive Simpson integral of a vectorizable f over one interval."""
    if b == a:
        return 0.0
    if b < a:
        raise ValueError("need a <= b")
    return adaptive_simpson_segments(
        f, np.array([a]), np.array([b]), np.array([tol]), max_depth
    )


def dyadic_endpoint_integral(
    piece: Callable[[float, float], float],
    lo: float,
    hi: float,
    toward_lo: bool,
    tol: float,
    max_levels: int = 400,
) -> float:
    """Sum piece integrals over dyadic shells accumulating toward an endpoint.

    piece(a, b) integrates one shell.  Shells halve toward `lo` (or `hi`).
    Stops once a shell contributes less than tol; raises
    DivergentIntegralError when shell contributions stop decaying (constant
    or growing per level is the signature of a log- or power-divergence).
    """
    if hi <= lo:
        return 0.0
    total = 0.0
    width = hi - lo
    prev = np.inf
    stall = 0
    for _ in range(max_levels):
        width *= 0.5
        if toward_lo:
            a, b = lo + width, lo + 2.0 * width
        else:
            a, b = hi - 2.0 * width, hi - width
        val = piece(a, b)
        total += val
        if abs(val) < tol:
            return total
        if abs(val) >= 0.95 * abs(prev):
            stall += 1
            if stall >= 12:
                raise DivergentIntegralError(
                    "endpoint shells stopped decaying: integral diverges"
                )
        else:
            stall = 0
        prev = val
    raise QuadratureError("endpoint refinement exceeded the level cap")

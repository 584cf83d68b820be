"""Wasserstein distances between step CDFs and reference laws.

W_p is the L^p distance between quantile functions on (0, 1).  Between two
step CDFs it is an exact finite sum over the merged cumulative grid.
Against a continuous law the blocks of the step quantile are integrated by
quadrature, with the two edge blocks handled by dyadic shells so that an
integrable quantile singularity converges and a non-integrable one (heavy
tail, p too large) raises instead of silently truncating.
"""

from __future__ import annotations

import math

import numpy as np

from .cdf_model import StepCdf
from .quadrature import (
    adaptive_simpson_segments,
    dyadic_endpoint_integral,
    integrate_gl,
)


def _check_p(p) -> float:
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"order p must satisfy p >= 1, got {p}")
    return p


def wasserstein_step_step(g: StepCdf, h: StepCdf, p) -> float:
    """Exact W_p(G, H) for step CDFs (p = inf gives sup |Q_G - Q_H|).

    For equal atom counts with equal masses this reduces to the matched
    order-statistic form (mean of |location differences|^p)^(1/p).
    """
    p = _check_p(p)
    cuts = np.union1d(g.cum, h.cum)  # ends with 1.0 by construction
    xg = g.locations[np.searchsorted(g.cum, cuts, side="left")]
    xh = h.locations[np.searchsorted(h.cum, cuts, side="left")]
    diff = np.abs(xg - xh)
    if math.isinf(p):
        return float(diff.max())
    widths = np.diff(np.concatenate([[0.0], cuts]))
    return float(np.sum(widths * diff**p) ** (1.0 / p))


def wp_power_equal_mass(a, b, p) -> float:
    """W_p^p between equal-count uniform-mass atom vectors: mean |a-b|^p.

    Both vectors must be sorted; this is the matched-atom identity.
    """
    p = _check_p(p)
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape:
        raise ValueError("atom vectors must have equal length")
    return float(np.mean(np.abs(av - bv) ** p))


def wasserstein_step_cont(g: StepCdf, f, p, tol: float = 1e-9) -> float:
    """W_p(G, F) for a step CDF against a law with a vectorized quantile.

    Each cumulative block of G contributes integral |x_i - Q(t)|^p dt over
    (c_{i-1}, c_i], split at the sign change t* = F(x_i).  Edge blocks use
    dyadic shells toward 0 resp. 1; DivergentIntegralError propagates when
    the quantile tail is too heavy for the requested p.
    """
    p = _check_p(p)
    if math.isinf(p):
        raise ValueError("p = inf is not defined for this distance")
    cuts = np.concatenate([[0.0], g.cum])
    atoms = g.locations

    # Blocks split at the level crossing; collect (lo, hi, edge) pieces,
    # where edge is 0 (toward t=0), 1 (toward t=1) or None (interior).
    pieces: list[tuple[float, float, int | None, float]] = []
    for i in range(atoms.size):
        lo, hi = float(cuts[i]), float(cuts[i + 1])
        x = float(atoms[i])
        tstar = float(f.cdf(x))
        bounds = [lo]
        if lo < tstar < hi:
            bounds.append(tstar)
        bounds.append(hi)
        for a, b in zip(bounds[:-1], bounds[1:]):
            if b <= a:
                continue
            if a == 0.0 and b == 1.0:
                pieces.append((0.0, 0.5, 0, x))
                pieces.append((0.5, 1.0, 1, x))
            elif a == 0.0:
                pieces.append((a, b, 0, x))
            elif b == 1.0:
                pieces.append((a, b, 1, x))
            else:
                pieces.append((a, b, None, x))

    total = 0.0
    interior = [(a, b) for a, b, edge, _ in pieces if edge is None]
    edge_count = sum(1 for _, _, edge, _ in pieces if edge is not None)
    tail_tol = 0.25 * tol / max(1, edge_count)

    for a, b, edge, x in pieces:
        if edge is None:
            continue

        def shell(lo_: float, hi_: float, x_=x) -> float:
            return integrate_gl(
                lambda t: np.abs(x_ - np.asarray(f.quantile(t), dtype=float)) ** p,
                np.array([lo_, hi_]),
                order=32,
            )

        total += dyadic_endpoint_integral(shell, a, b, toward_lo=(edge == 0), tol=tail_tol)

    if interior:
        def integrand(t: np.ndarray) -> np.ndarray:
            xg = atoms[np.searchsorted(g.cum, t, side="left")]
            return np.abs(xg - np.asarray(f.quantile(t), dtype=float)) ** p

        lo_arr = np.array([np.nextafter(a, np.inf) for a, _ in interior])
        hi_arr = np.array([b for _, b in interior])
        seg_tol = 0.5 * tol / len(interior)
        total += adaptive_simpson_segments(integrand, lo_arr, hi_arr, seg_tol)

    return float(total ** (1.0 / p))


def ks_two_sample(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|."""
    av = np.sort(np.asarray(a, dtype=float))
    bv = np.sort(np.asarray(b, dtype=float))
    if av.size == 0 or bv.size == 0:
        raise ValueError("both samples must be nonempty")
    pooled = np.concatenate([av, bv])
    pooled.sort(kind="mergesort")
    ca = np.searchsorted(av, pooled, side="right") / av.size
    cb = np.searchsorted(bv, pooled, side="right") / bv.size
    return float(np.max(np.abs(ca - cb)))

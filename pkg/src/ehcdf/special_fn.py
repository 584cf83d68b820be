"""Beta order-statistic distributions and binomial deviation sums.

Everything downstream rests on the distribution of the j-th order statistic
of m iid U(0,1) variables, which is Beta(j, m - j + 1).  This module gives
its CDF and density (scalar and vectorized over the evaluation points), the
log-binomial helpers shared by the fast paths, and the exact mean absolute
deviation of a binomial variable around its mean.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

# Lentz continued-fraction controls: relative tolerance and iteration cap.
_CF_EPS = 1e-15
_CF_MAXIT = 300
_FPMIN = 1e-300


class ConvergenceError(RuntimeError):
    """An iterative evaluation failed to reach its tolerance."""


class BetaParams(NamedTuple):
    """Order-statistic indices (j, m): the j-th smallest of m uniforms.

    The associated law is Beta(j, m - j + 1).  Requires 1 <= j <= m.
    """

    j: int
    m: int


def _check_params(params: BetaParams) -> None:
    j, m = params
    if not (isinstance(j, (int, np.integer)) and isinstance(m, (int, np.integer))):
        raise ValueError(f"order-statistic indices must be integers, got {params!r}")
    if not 1 <= j <= m:
        raise ValueError(f"need 1 <= j <= m, got j={j}, m={m}")


def log_binomial(n: int, k) -> np.ndarray | float:
    """log C(n, k) through log-gamma; k may be an integer array."""
    k = np.asarray(k)
    out = (
        math.lgamma(n + 1)
        - _lgamma_int(k + 1)
        - _lgamma_int(n - k + 1)
    )
    return out if out.ndim else float(out)


def _lgamma_int(k) -> np.ndarray:
    # math.lgamma per element: exact to 1 ulp, and the arrays here are small.
    flat = np.asarray(k, dtype=float).ravel()
    vals = np.array([math.lgamma(x) for x in flat])
    return vals.reshape(np.shape(k))


def _betainc_core(a: float, b: float, x: np.ndarray) -> np.ndarray:
    """Regularized incomplete beta I_x(a, b) on x in [0, 1], elementwise.

    Modified Lentz evaluation of the standard continued fraction, with the
    symmetry flip I_x(a,b) = 1 - I_{1-x}(b,a) applied for x above the
    distribution mean a/(a+b) so both branches stay in the fast-convergence
    region.  Raises ConvergenceError if any lane fails within the cap.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"beta parameters must be positive, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)) or not np.all(np.isfinite(x)):
        raise ValueError("incomplete beta argument must lie in [0, 1]")

    flip = x > a / (a + b)
    xf = np.where(flip, 1.0 - x, x)
    af = np.where(flip, b, a)
    bf = np.where(flip, a, b)

    # Exact endpoints are patched after the fraction runs on interior points.
    interior = (xf > 0.0) & (xf < 1.0)
    xs = np.where(interior, xf, 0.5)

    lbeta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    with np.errstate(divide="ignore", invalid="ignore"):
        front = np.exp(af * np.log(xs) + bf * np.log1p(-xs) - lbeta) / af

    qab = af + bf
    qap = af + 1.0
    qam = af - 1.0
    c = np.ones_like(xs)
    d = 1.0 - qab * xs / qap
    d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
    d = 1.0 / d
    h = d.copy()
    h_out = np.zeros_like(xs)
    done = ~interior

    for it in range(1, _CF_MAXIT + 1):
        m2 = 2.0 * it
        aa = it * (bf - it) * xs / ((qam + m2) * (af + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        h = h * d * c
        aa = -(af + it) * (qab + it) * xs / ((af + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        newly = ~done & (np.abs(delta - 1.0) < _CF_EPS)
        h_out = np.where(newly, h, h_out)
        done = done | newly
        if done.all():
            break
    else:
        raise ConvergenceError(
            f"incomplete beta continued fraction: {int((~done).sum())} points "
            f"unconverged after {_CF_MAXIT} iterations (a={a}, b={b})"
        )

    val = front * h_out
    val = np.where(xf <= 0.0, 0.0, val)
    val = np.where(xf >= 1.0, 1.0, val)
    return np.where(flip, 1.0 - val, val)


def regularized_incomplete_beta(a: float, b: float, x) -> np.ndarray | float:
    """I_x(a, b) for real a, b > 0; x scalar or array in [0, 1]."""
    arr = _betainc_core(float(a), float(b), np.asarray(x, dtype=float))
    return arr if np.ndim(x) else float(arr)


def beta_cdf(params: BetaParams, x) -> np.ndarray | float:
    """P(U_{j:m} <= x), the Beta(j, m-j+1) CDF.

    Parameters
    ----------
    params : BetaParams
        Indices (j, m) with 1 <= j <= m.
    x : float or array_like
        Evaluation points in [0, 1].

    Returns
    -------
    float or ndarray
        Monotone nondecreasing in x; equals P(B >= j) for B ~ Binomial(m, x).
    """
    _check_params(params)
    j, m = params
    return regularized_incomplete_beta(j, m - j + 1, x)


def beta_pdf(params: BetaParams, x) -> np.ndarray | float:
    """Density of U_{j:m}: m * C(m-1, j-1) * x^(j-1) * (1-x)^(m-j).

    Evaluated in log space so large (j, m) stay finite.  At the endpoints the
    defining polynomial is used directly (nonzero only for j = 1 or j = m).
    """
    _check_params(params)
    j, m = params
    xarr = np.asarray(x, dtype=float)
    if np.any((xarr < 0) | (xarr > 1)) or not np.all(np.isfinite(xarr)):
        raise ValueError("beta density argument must lie in [0, 1]")
    logc = math.log(m) + float(log_binomial(m - 1, j - 1))
    interior = (xarr > 0.0) & (xarr < 1.0)
    xs = np.where(interior, xarr, 0.5)
    with np.errstate(divide="ignore"):
        out = np.exp(logc + (j - 1) * np.log(xs) + (m - j) * np.log1p(-xs))
    out = np.where(interior, out, 0.0)
    out = np.where((xarr == 0.0) & (j == 1), float(m), out)
    out = np.where((xarr == 1.0) & (j == m), float(m), out)
    return out if np.ndim(x) else float(out)


def beta_pdf_grid(m: int, x: np.ndarray) -> np.ndarray:
    """Densities of U_{j:m} for all j at once: shape (m, len(x)).

    Same log-space evaluation as beta_pdf, row j-1 holding f_{B_{j:m}}.
    Endpoint columns follow the beta_pdf conventions.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    x = np.asarray(x, dtype=float)
    j = np.arange(1, m + 1)
    logc = math.log(m) + np.asarray(log_binomial(m - 1, j - 1), dtype=float)
    interior = (x > 0.0) & (x < 1.0)
    xs = np.where(interior, x, 0.5)
    with np.errstate(divide="ignore"):
        logs = (
            logc[:, None]
            + (j[:, None] - 1) * np.log(xs)[None, :]
            + (m - j[:, None]) * np.log1p(-xs)[None, :]
        )
    out = np.where(interior[None, :], np.exp(logs), 0.0)
    if np.any(x == 0.0):
        out[0, x == 0.0] = float(m)
    if np.any(x == 1.0):
        out[m - 1, x == 1.0] = float(m)
    return out


def binomial_pmf_log(m: int, t: np.ndarray) -> np.ndarray:
    """log P(B = b) for B ~ Binomial(m, t): shape (m+1, len(t)).

    t must lie strictly inside (0, 1); endpoint columns are the caller's
    business (the mass collapses onto b = 0 or b = m there).
    """
    t = np.asarray(t, dtype=float)
    b = np.arange(m + 1)
    logc = np.asarray(log_binomial(m, b), dtype=float)
    return (
        logc[:, None]
        + b[:, None] * np.log(t)[None, :]
        + (m - b[:, None]) * np.log1p(-t)[None, :]
    )


def binomial_mean_abs_dev(m: int, t) -> np.ndarray | float:
    """(1/m) E|B - mt| for B ~ Binomial(m, t), by exact summation.

    Bounded above by sqrt(t(1-t)/m).  Exact (no approximation path) for any
    m where an (m+1)-term sum is tolerable; intended for m <= 1e4.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t_arr < 0) | (t_arr > 1)):
        raise ValueError("t must lie in [0, 1]")
    out = np.zeros_like(t_arr)
    inner = (t_arr > 0.0) & (t_arr < 1.0)
    if inner.any():
        ti = t_arr[inner]
        pmf = np.exp(binomial_pmf_log(m, ti))
        dev = np.abs(np.arange(m + 1)[:, None] - m * ti[None, :])
        out[inner] = (dev * pmf).sum(axis=0) / m
    return out if np.ndim(t) else float(out[0])

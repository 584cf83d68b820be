"""Reference laws: CDFs, quantiles, densities, and reproducible samplers.

Every law is packaged as a DistributionSpec with vectorized cdf/quantile/pdf
and a sampler that consumes nothing but uniforms from the supplied
generator, so a given counter-based stream always yields the same sample no
matter where it is drawn.  Streams come from `substream`, which keys a
Philox generator by a hash of (seed, *path); disjoint paths give
independent, order-free streams.

Property flags: `property_q` records whether the quantile function is
locally absolutely continuous with integral of sqrt(u(1-u)) dQ finite
(t with nu <= 2, discrete laws, and conservatively all mixtures fail);
`property_q2` additionally demands the integral of u(1-u) q(u)^2 du finite
plus boundary control, which among the laws here holds only for the
compactly supported continuous ones (uniform, beta): any exponential-type
infinite tail makes (1-F)/f non-integrable.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_U_MIN = 2.0**-53  # uniforms are clamped into [2^-53, 1-2^-53]


# ---------------------------------------------------------------------------
# Normal special functions (one vectorized code path for scalars and arrays)

_ERF_A = np.array([
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1,
])
_ERF_B = np.array([
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
    2.84423683343917062e03,
])
_ERF_C = np.array([
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8,
])
_ERF_D = np.array([
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03,
])
_ERF_P = np.array([
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2,
])
_ERF_Q = np.array([
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3,
])


def _erfc_positive(y: np.ndarray) -> np.ndarray:
    # Cody's rational approximations; y >= 0.46875 only.
    out = np.zeros_like(y)
    mid = y <= 4.0
    if mid.any():
        ym = y[mid]
        xnum = _ERF_C[8] * ym
        xden = ym
        for i in range(7):
            xnum = (xnum + _ERF_C[i]) * ym
            xden = (xden + _ERF_D[i]) * ym
        r = (xnum + _ERF_C[7]) / (xden + _ERF_D[7])
        ysq = np.trunc(ym * 16.0) / 16.0
        dl = (ym - ysq) * (ym + ysq)
        out[mid] = np.exp(-ysq * ysq) * np.exp(-dl) * r
    big = ~mid
    if big.any():
        yb = y[big]
        z = 1.0 / (yb * yb)
        xnum = _ERF_P[5] * z
        xden = z
        for i in range(4):
            xnum = (xnum + _ERF_P[i]) * z
            xden = (xden + _ERF_Q[i]) * z
        r = z * (xnum + _ERF_P[4]) / (xden + _ERF_Q[4])
        r = (1.0 / math.sqrt(math.pi) - r) / yb
        ysq = np.trunc(yb * 16.0) / 16.0
        dl = (yb - ysq) * (yb + ysq)
        with np.errstate(under="ignore"):
            out[big] = np.exp(-ysq * ysq) * np.exp(-dl) * r
        out[big] = np.where(yb > 26.55, 0.0, out[big])
    return out


def erf(x):
    """Error function, Cody rational approximation (|rel err| ~ 1e-16)."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.abs(xa)
    out = np.empty_like(y)
    small = y <= 0.46875
    if small.any():
        xs = xa[small]
        z = xs * xs
        xnum = _ERF_A[4] * z
        xden = z
        for i in range(3):
            xnum = (xnum + _ERF_A[i]) * z
            xden = (xden + _ERF_B[i]) * z
        out[small] = xs * (xnum + _ERF_A[3]) / (xden + _ERF_B[3])
    rest = ~small
    if rest.any():
        e = _erfc_positive(y[rest])
        out[rest] = np.sign(xa[rest]) * (1.0 - e)
    return out if np.ndim(x) else float(out[0])


def erfc(x):
    """Complementary error function, accurate down to underflow."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.abs(xa)
    out = np.empty_like(y)
    small = y <= 0.46875
    if small.any():
        out[small] = 1.0 - np.asarray(erf(xa[small]), dtype=float).reshape(-1)
    rest = ~small
    if rest.any():
        e = _erfc_positive(y[rest])
        out[rest] = np.where(xa[rest] < 0.0, 2.0 - e, e)
    return out if np.ndim(x) else float(out[0])


def norm_cdf(x):
    """Standard normal CDF via erfc (tail-accurate)."""
    xa = np.asarray(x, dtype=float)
    out = 0.5 * np.asarray(erfc(-xa / _SQRT2))
    return out if np.ndim(x) else float(out)


def norm_pdf(x):
    xa = np.asarray(x, dtype=float)
    with np.errstate(under="ignore"):
        out = _INV_SQRT_2PI * np.exp(-0.5 * xa * xa)
    return out if np.ndim(x) else float(out)


def norm_ppf(p):
    """Standard normal quantile: crude rational start + 3 Halley steps.

    Full double accuracy for p in [1e-300, 1 - 1e-16]; errors raised
    outside (0, 1).
    """
    pa = np.atleast_1d(np.asarray(p, dtype=float))
    if np.any(~np.isfinite(pa)) or np.any(pa <= 0.0) or np.any(pa >= 1.0):
        raise ValueError("normal quantile level must lie in (0, 1)")
    pm = np.minimum(pa, 1.0 - pa)
    t = np.sqrt(-2.0 * np.log(pm))
    x = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t)
    x = np.where(pa < 0.5, -x, x)
    for _ in range(3):
        err = np.asarray(norm_cdf(x)) - pa
        dens = np.maximum(np.asarray(norm_pdf(x)), 1e-310)
        u = err / dens
        corr = 1.0 + 0.5 * u * x
        step = np.where(corr > 0.5, u / corr, u)
        x = x - step
    return x if np.ndim(p) else float(x[0])


# ---------------------------------------------------------------------------
# Regularized lower incomplete gamma (series + Lentz continued fraction)

def _gammainc_p(a: float, x) -> np.ndarray | float:
    """P(a, x) for a > 0, x >= 0, vectorized over x."""
    if a <= 0:
        raise ValueError("shape must be positive")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0):
        raise ValueError("incomplete gamma argument must be >= 0")
    out = np.zeros_like(xs)
    lg = math.lgamma(a)
    with np.errstate(divide="ignore", under="ignore"):
        pref = np.where(xs > 0, np.exp(a * np.log(np.maximum(xs, 1e-320)) - xs - lg), 0.0)

    ser = (xs > 0) & (xs < a + 1.0)
    if ser.any():
        xv = xs[ser]
        ap = np.full_like(xv, a)
        term = np.full_like(xv, 1.0 / a)
        s = term.copy()
        for _ in range(500):
            ap += 1.0
            term = term * xv / ap
            s += term
            if np.all(np.abs(term) < np.abs(s) * 1e-16):
                break
        out[ser] = pref[ser] * s

    cf = xs >= a + 1.0
    if cf.any():
        xv = xs[cf]
        tiny = 1e-300
        b = xv + 1.0 - a
        c = np.full_like(xv, 1.0 / tiny)
        d = 1.0 / np.where(np.abs(b) < tiny, tiny, b)
        h = d.copy()
        for i in range(1, 500):
            an = -i * (i - a)
            b = b + 2.0
            d = an * d + b
            d = np.where(np.abs(d) < tiny, tiny, d)
            c = b + an / c
            c = np.where(np.abs(c) < tiny, tiny, c)
            d = 1.0 / d
            dl = d * c
            h = h * dl
            if np.all(np.abs(dl - 1.0) < 1e-16):
                break
        out[cf] = 1.0 - pref[cf] * h

    return out if np.ndim(x) else float(out[0])


# ---------------------------------------------------------------------------
# Law container

@dataclass
class DistributionSpec:
    """A reference law: vectorized cdf/quantile/pdf plus a sampler.

    `sample(rng, size)` consumes only uniforms (and values derived from
    them) from `rng`.  `discrete_atoms` lists jump locations for laws with
    atoms (empty for continuous laws); `cdf_minus` gives left limits.
    """

    name: str
    params: tuple
    support: tuple[float, float]
    property_q: bool
    property_q2: bool
    _cdf: Callable = field(repr=False)
    _quantile: Callable = field(repr=False)
    _sample: Callable = field(repr=False)
    _pdf: Callable | None = field(default=None, repr=False)
    discrete_atoms: tuple = ()
    _cdf_minus: Callable | None = field(default=None, repr=False)

    @property
    def label(self) -> str:
        inner = ",".join(f"{v:g}" if isinstance(v, (int, float)) else str(v)
                         for v in self.params)
        return f"{self.name}({inner})"

    def _call(self, fn, x, ndim):
        xa = np.asarray(x, dtype=float)
        out = np.asarray(fn(np.atleast_1d(xa).ravel()), dtype=float)
        return out.reshape(xa.shape) if ndim else float(out[0])

    def cdf(self, x):
        return self._call(self._cdf, x, np.ndim(x))

    def cdf_minus(self, x):
        return self._call(self._cdf_minus or self._cdf, x, np.ndim(x))

    def quantile(self, p):
        pa = np.asarray(p, dtype=float)
        if np.any(~np.isfinite(pa)) or np.any(pa <= 0.0) or np.any(pa >= 1.0):
            raise ValueError("quantile level must lie strictly in (0, 1)")
        return self._call(self._quantile, pa, np.ndim(p))

    @property
    def has_density(self) -> bool:
        return self._pdf is not None

    def pdf(self, x):
        if self._pdf is None:
            raise ValueError(f"{self.label} has no density")
        return self._call(self._pdf, x, np.ndim(x))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if size < 1:
            raise ValueError("sample size must be >= 1")
        return self._sample(rng, int(size))


def substream(seed: int, *path) -> np.random.Generator:
    """Philox generator keyed by a hash of (seed, *path).

    Counter-based, so streams depend only on the key: any worker asking for
    the same path gets the same draws, independent of scheduling.
    """
    text = "|".join([str(int(seed)), *map(str, path)])
    digest = hashlib.sha256(text.encode()).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    return np.clip(rng.random(size), _U_MIN, 1.0 - _U_MIN)


def _box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    u = rng.random(2 * size)
    u1 = u[:size]
    u2 = u[size:]
    # 1 - u1 lies in (0, 1], so the log is safe; cosine branch only.
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * math.pi * u2)


def _gamma_mt(rng: np.random.Generator, shape: float, size: int) -> np.ndarray:
    """Marsaglia-Tsang gamma(shape, 1) draws (no squeeze step)."""
    a = shape if shape >= 1.0 else shape + 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    filled = 0
    while filled < size:
        k = size - filled
        z = _box_muller(rng, k)
        v = (1.0 + c * z) ** 3
        u = _uniforms(rng, k)
        with np.errstate(invalid="ignore", divide="ignore"):
            ok = (v > 0.0) & (np.log(u) < 0.5 * z * z + d - d * v + d * np.log(np.where(v > 0, v, 1.0)))
        acc = d * v[ok]
        out[filled : filled + acc.size] = acc
        filled += acc.size
    if shape < 1.0:
        boost = _uniforms(rng, size) ** (1.0 / shape)
        out = out * boost
    return out


# ---------------------------------------------------------------------------
# Catalog constructors

def uniform_law(a: float, b: float) -> DistributionSpec:
    if not b > a:
        raise ValueError("uniform needs a < b")
    w = b - a
    return DistributionSpec(
        name="uniform", params=(a, b), support=(a, b),
        property_q=True, property_q2=True,
        _cdf=lambda x: np.clip((x - a) / w, 0.0, 1.0),
        _quantile=lambda p: a + w * p,
        _pdf=lambda x: np.where((x >= a) & (x <= b), 1.0 / w, 0.0),
        _sample=lambda rng, n: a + w * rng.random(n),
    )


def normal_law(mu: float, sd: float) -> DistributionSpec:
    if not sd > 0:
        raise ValueError("normal needs sd > 0")
    return DistributionSpec(
        name="normal", params=(mu, sd), support=(-math.inf, math.inf),
        property_q=True, property_q2=False,
        _cdf=lambda x: np.asarray(norm_cdf((x - mu) / sd)),
        _quantile=lambda p: mu + sd * np.asarray(norm_ppf(p)),
        _pdf=lambda x: np.asarray(norm_pdf((x - mu) / sd)) / sd,
        _sample=lambda rng, n: mu + sd * _box_muller(rng, n),
    )


def lognormal_law(mu: float, sd: float) -> DistributionSpec:
    if not sd > 0:
        raise ValueError("lognormal needs sd > 0")

    def cdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        out[pos] = np.asarray(norm_cdf((np.log(x[pos]) - mu) / sd))
        return out

    def pdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        xp = x[pos]
        out[pos] = np.asarray(norm_pdf((np.log(xp) - mu) / sd)) / (sd * xp)
        return out

    return DistributionSpec(
        name="lognormal", params=(mu, sd), support=(0.0, math.inf),
        property_q=True, property_q2=False,
        _cdf=cdf,
        _quantile=lambda p: np.exp(mu + sd * np.asarray(norm_ppf(p))),
        _pdf=pdf,
        _sample=lambda rng, n: np.exp(mu + sd * _box_muller(rng, n)),
    )


def weibull_law(shape: float, scale: float) -> DistributionSpec:
    if not (shape > 0 and scale > 0):
        raise ValueError("weibull needs shape > 0 and scale > 0")

    def cdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        out[pos] = -np.expm1(-((x[pos] / scale) ** shape))
        return out

    def pdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        z = x[pos] / scale
        out[pos] = (shape / scale) * z ** (shape - 1.0) * np.exp(-(z**shape))
        return out

    return DistributionSpec(
        name="weibull", params=(shape, scale), support=(0.0, math.inf),
        property_q=True, property_q2=False,
        _cdf=cdf,
        _quantile=lambda p: scale * (-np.log1p(-p)) ** (1.0 / shape),
        _pdf=pdf,
        _sample=lambda rng, n: scale * (-np.log1p(-rng.random(n))) ** (1.0 / shape),
    )


def gamma_law(shape: float, scale: float) -> DistributionSpec:
    if not (shape > 0 and scale > 0):
        raise ValueError("gamma needs shape > 0 and scale > 0")
    lg = math.lgamma(shape)

    def cdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        out[pos] = np.asarray(_gammainc_p(shape, x[pos] / scale))
        return out

    def pdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        xp = x[pos] / scale
        with np.errstate(divide="ignore", under="ignore"):
            out[pos] = np.exp((shape - 1.0) * np.log(xp) - xp - lg) / scale
        return out

    def quantile(p):
        p = np.atleast_1d(p)
        # Wilson-Hilferty start, then safeguarded Newton on P(shape, x).
        # Where the cube start collapses (deep lower tail) switch to the
        # leading-term inversion P(a, x) ~ x^a / Gamma(a+1).
        z = np.asarray(norm_ppf(p))
        c = 1.0 / (9.0 * shape)
        wh = 1.0 - c + z * np.sqrt(c)
        series = np.exp((np.log(p) + lg + math.log(shape)) / shape)
        x = np.where(wh > 0.1, shape * np.maximum(wh, 0.1) ** 3, series)
        lo = np.zeros_like(x)
        hi = np.full_like(x, np.inf)
        for _ in range(100):
            fx = np.asarray(_gammainc_p(shape, x)) - p
            hi = np.where(fx > 0, np.minimum(hi, x), hi)
            lo = np.where(fx <= 0, np.maximum(lo, x), lo)
            with np.errstate(divide="ignore", under="ignore", over="ignore"):
                dens = np.exp((shape - 1.0) * np.log(np.maximum(x, 1e-320)) - x - lg)
                step = np.where(dens > 0, fx / np.maximum(dens, 1e-320), 0.0)
            xn = x - step
            bad = ~((xn > lo) & (xn < hi) & np.isfinite(xn))
            mid = np.where(np.isinf(hi), 2.0 * np.maximum(x, 1.0), 0.5 * (lo + hi))
            xn = np.where(bad, mid, xn)
            if np.all(np.abs(xn - x) <= 1e-13 * np.maximum(xn, 1e-300)):
                x = xn
                break
            x = xn
        return x * scale

    return DistributionSpec(
        name="gamma", params=(shape, scale), support=(0.0, math.inf),
        property_q=True, property_q2=False,
        _cdf=cdf, _quantile=quantile, _pdf=pdf,
        _sample=lambda rng, n: scale * _gamma_mt(rng, shape, n),
    )


def gompertz_law(a: float, sigma: float) -> DistributionSpec:
    """CDF 1 - exp(a(1 - exp(sigma x))) on x > 0."""
    if not (a > 0 and sigma > 0):
        raise ValueError("gompertz needs a > 0 and sigma > 0")

    def cdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        with np.errstate(over="ignore"):  # expm1 overflow still gives cdf 1
            out[pos] = -np.expm1(a * -np.expm1(sigma * x[pos]))
        return out

    def pdf(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        xp = x[pos]
        with np.errstate(over="ignore", invalid="ignore"):
            out[pos] = a * sigma * np.exp(sigma * xp + a * -np.expm1(sigma * xp))
        out[~np.isfinite(out)] = 0.0
        return out

    return DistributionSpec(
        name="gompertz", params=(a, sigma), support=(0.0, math.inf),
        property_q=True, property_q2=False,
        _cdf=cdf,
        _quantile=lambda p: np.log1p(-np.log1p(-p) / a) / sigma,
        _pdf=pdf,
        _sample=lambda rng, n: np.log1p(-np.log1p(-rng.random(n)) / a) / sigma,
    )


def beta_law(alpha: float, beta: float) -> DistributionSpec:
    if not (alpha > 0 and beta > 0):
        raise ValueError("beta needs positive shape parameters")
    from .special_fn import regularized_incomplete_beta

    lb = math.lgamma(alpha) + math.lgamma(beta) - math.lgamma(alpha + beta)

    def cdf(x):
        xc = np.clip(x, 0.0, 1.0)
        return np.asarray(regularized_incomplete_beta(alpha, beta, xc))

    def pdf(x):
        out = np.zeros_like(x)
        pos = (x > 0.0) & (x < 1.0)
        xp = x[pos]
        out[pos] = np.exp(
            (alpha - 1.0) * np.log(xp) + (beta - 1.0) * np.log1p(-xp) - lb
        )
        return out

    def quantile(p):
        p = np.atleast_1d(p)
        lo = np.zeros_like(p)
        hi = np.ones_like(p)
        x = np.full_like(p, alpha / (alpha + beta))
        for _ in range(200):
            fx = cdf(x) - p
            hi = np.where(fx > 0, np.minimum(hi, x), hi)
            lo = np.where(fx <= 0, np.maximum(lo, x), lo)
            dens = pdf(x)
            step = np.where(dens > 0, fx / np.maximum(dens, 1e-320), 0.0)
            xn = x - step
            bad = ~((xn > lo) & (xn < hi))
            xn = np.where(bad, 0.5 * (lo + hi), xn)
            if np.all(np.abs(xn - x) <= 1e-15 + 1e-13 * np.abs(xn)):
                x = xn
                break
            x = xn
        return x

    def sampler(rng, n):
        g1 = _gamma_mt(rng, alpha, n)
        g2 = _gamma_mt(rng, beta, n)
        return g1 / (g1 + g2)

    return DistributionSpec(
        name="beta", params=(alpha, beta), support=(0.0, 1.0),
        property_q=True, property_q2=True,
        _cdf=cdf, _quantile=quantile, _pdf=pdf, _sample=sampler,
    )


def student_t_law(nu: float) -> DistributionSpec:
    if not nu > 1:
        raise ValueError("student_t needs nu > 1 (no finite mean otherwise)")
    from .special_fn import regularized_incomplete_beta

    lc = math.lgamma((nu + 1.0) / 2.0) - math.lgamma(nu / 2.0) \
        - 0.5 * math.log(nu * math.pi)

    def pdf(x):
        return np.exp(lc - 0.5 * (nu + 1.0) * np.log1p(x * x / nu))

    def cdf(x):
        z = nu / (nu + x * x)
        tail = 0.5 * np.asarray(regularized_incomplete_beta(nu / 2.0, 0.5, z))
        return np.where(x > 0.0, 1.0 - tail, np.where(x < 0.0, tail, 0.5))

    if nu == 2.0:
        def quantile(p):
            return (2.0 * p - 1.0) / np.sqrt(2.0 * p * (1.0 - p))
    else:
        def quantile(p):
            p = np.atleast_1d(p)
            z = np.asarray(norm_ppf(p))
            x = z * (1.0 + (z * z + 1.0) / (4.0 * nu))  # Cornish-Fisher-ish start
            lo = np.full_like(p, -np.inf)
            hi = np.full_like(p, np.inf)
            for _ in range(100):
                fx = cdf(x) - p
                hi = np.where(fx > 0, np.minimum(hi, x), hi)
                lo = np.where(fx <= 0, np.maximum(lo, x), lo)
                with np.errstate(over="ignore", invalid="ignore"):
                    step = fx / np.maximum(pdf(x), 1e-320)
                    xn = x - step
                    bad = ~((xn > lo) & (xn < hi) & np.isfinite(xn))
                    mid = np.where(
                        np.isfinite(lo) & np.isfinite(hi), 0.5 * (lo + hi),
                        np.where(np.isfinite(lo), lo + 1.0 + np.abs(lo), hi - 1.0 - np.abs(hi)),
                    )
                xn = np.where(bad, mid, xn)
                if np.all(np.abs(xn - x) <= 1e-15 + 1e-13 * np.abs(xn)):
                    x = xn
                    break
                x = xn
            return x

    if nu == 2.0:
        def sampler(rng, n):
            u = _uniforms(rng, n)
            return (2.0 * u - 1.0) / np.sqrt(2.0 * u * (1.0 - u))
    else:
        def sampler(rng, n):
            z = _box_muller(rng, n)
            v = 2.0 * _gamma_mt(rng, nu / 2.0, n)
            return z / np.sqrt(v / nu)

    return DistributionSpec(
        name="student_t", params=(nu,), support=(-math.inf, math.inf),
        property_q=nu > 2.0, property_q2=False,
        _cdf=lambda x: cdf(x), _quantile=quantile, _pdf=pdf, _sample=sampler,
    )


def logistic_law(loc: float, scale: float) -> DistributionSpec:
    if not scale > 0:
        raise ValueError("logistic needs scale > 0")

    def cdf(x):
        z = (x - loc) / scale
        return 0.5 * (1.0 + np.tanh(0.5 * z))

    def pdf(x):
        z = np.abs(x - loc) / scale
        with np.errstate(under="ignore"):
            e = np.exp(-z)
        return e / (scale * (1.0 + e) ** 2)

    def quantile(p):
        return loc + scale * (np.log(p) - np.log1p(-p))

    def sampler(rng, n):
        u = _uniforms(rng, n)
        return loc + scale * (np.log(u) - np.log1p(-u))

    return DistributionSpec(
        name="logistic", params=(loc, scale), support=(-math.inf, math.inf),
        property_q=True, property_q2=False,
        _cdf=cdf, _quantile=quantile, _pdf=pdf, _sample=sampler,
    )


def binomial_law(k: int, prob: float) -> DistributionSpec:
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("binomial needs an integer trial count >= 1")
    if not 0.0 < prob < 1.0:
        raise ValueError("binomial needs success probability in (0, 1)")
    from .special_fn import log_binomial

    j = np.arange(k + 1)
    logpmf = (
        np.asarray(log_binomial(k, j), dtype=float)
        + j * math.log(prob)
        + (k - j) * math.log1p(-prob)
    )
    pmf = np.exp(logpmf)
    pmf = pmf / pmf.sum()
    cum = np.cumsum(pmf)
    cum[-1] = 1.0

    def cdf(x):
        idx = np.searchsorted(j, np.floor(x), side="right")
        levels = np.concatenate([[0.0], cum])
        return levels[np.clip(idx, 0, k + 1)]

    def cdf_minus(x):
        idx = np.searchsorted(j, x, side="left")
        levels = np.concatenate([[0.0], cum])
        return levels[np.clip(idx, 0, k + 1)]

    def quantile(p):
        return j[np.searchsorted(cum, p, side="left")].astype(float)

    def sampler(rng, n):
        return j[np.searchsorted(cum, rng.random(n), side="left")].astype(float)

    return DistributionSpec(
        name="binomial", params=(k, prob), support=(0.0, float(k)),
        property_q=False, property_q2=False,
        _cdf=cdf, _quantile=quantile, _sample=sampler,
        _pdf=None, discrete_atoms=tuple(float(v) for v in j),
        _cdf_minus=cdf_minus,
    )


def mixture_law(first: DistributionSpec, second: DistributionSpec) -> DistributionSpec:
    """Equal-weight two-component mixture."""
    comps = (first, second)
    support = (
        min(first.support[0], second.support[0]),
        max(first.support[1], second.support[1]),
    )
    atoms = tuple(sorted(set(first.discrete_atoms) | set(second.discrete_atoms)))
    both_density = all(c.has_density for c in comps)

    def cdf(x):
        return 0.5 * (np.asarray(first.cdf(x)) + np.asarray(second.cdf(x)))

    def cdf_minus(x):
        return 0.5 * (np.asarray(first.cdf_minus(x)) + np.asarray(second.cdf_minus(x)))

    def pdf(x):
        return 0.5 * (np.asarray(first.pdf(x)) + np.asarray(second.pdf(x)))

    def quantile(p):
        p = np.atleast_1d(p)
        q1 = np.asarray(first.quantile(p))
        q2 = np.asarray(second.quantile(p))
        hi = np.maximum(q1, q2)
        lo = np.minimum(q1, q2)
        # Expand lo until F(lo) < p strictly (inf{x: F(x) >= p} may sit below).
        for _ in range(200):
            mask = cdf(lo) >= p
            if not mask.any():
                break
            lo = np.where(mask, lo - np.maximum(1.0, hi - lo), lo)
        scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            ge = cdf(mid) >= p
            hi = np.where(ge, mid, hi)
            lo = np.where(ge, lo, mid)
            if np.all(hi - lo <= 1e-12 * scale):
                break
        return hi

    def sampler(rng, n):
        pick = rng.random(n) < 0.5
        n1 = int(pick.sum())
        out = np.empty(n)
        if n1:
            out[pick] = first.sample(rng, n1)
        if n - n1:
            out[~pick] = second.sample(rng, n - n1)
        return out

    return DistributionSpec(
        name="mixture",
        params=(first.label, second.label),
        support=support,
        property_q=False,   # conservative: not established for mixtures
        property_q2=False,
        _cdf=cdf, _quantile=quantile, _sample=sampler,
        _pdf=pdf if both_density else None,
        discrete_atoms=atoms,
        _cdf_minus=cdf_minus if atoms else None,
    )


_CATALOG: dict[str, tuple[Callable, int]] = {
    "uniform": (uniform_law, 2),
    "normal": (normal_law, 2),
    "lognormal": (lognormal_law, 2),
    "weibull": (weibull_law, 2),
    "gamma": (gamma_law, 2),
    "gompertz": (gompertz_law, 2),
    "beta": (beta_law, 2),
    "student_t": (student_t_law, 1),
    "logistic": (logistic_law, 2),
    "binomial": (binomial_law, 2),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG) + ["mixture"]


def catalog_lookup(name: str, params) -> DistributionSpec:
    """Build a catalog law by name; binomial trial counts must be integral."""
    if name not in _CATALOG:
        raise ValueError(f"unknown distribution {name!r}; known: {catalog_names()}")
    ctor, nparams = _CATALOG[name]
    params = list(params)
    if len(params) != nparams:
        raise ValueError(f"{name} takes {nparams} parameter(s), got {len(params)}")
    if name == "binomial":
        k = params[0]
        if float(k) != int(float(k)):
            raise ValueError("binomial trial count must be an integer")
        return ctor(int(float(k)), float(params[1]))
    return ctor(*map(float, params))

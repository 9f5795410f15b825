"""The sine-skewed von Mises distribution on [-pi, pi].

Density::

    f(theta) = exp(k cos theta) (1 + lam sin theta) / (2 pi I_0(k))

with concentration ``k >= 0`` and skewness ``-1 <= lam <= 1``. All functions
accepting ``theta`` work on floats and on numpy arrays; angles outside
[-pi, pi] are wrapped first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bessel import DEFAULT_CONFIG, SeriesConfig, bessel_i_orders
from .errors import DomainError

__all__ = [
    "SvmParams",
    "CircularMoment",
    "wrap_angle",
    "pdf",
    "logpdf",
    "pdf_series",
    "cdf",
    "quantile",
    "mode",
    "mode_equation",
    "mean",
    "vm_circular_moment",
    "circular_moment",
    "recover_concentration",
]

TWO_PI = 2.0 * math.pi

# Bracket scan used by the mode solver.
_MODE_CELLS = 64
_MODE_XTOL = 1e-14


@dataclass(frozen=True)
class SvmParams:
    """Concentration ``k`` and skewness ``lam`` of the distribution."""

    k: float
    lam: float = 0.0

    def __post_init__(self):
        k, lam = float(self.k), float(self.lam)
        if not math.isfinite(k) or k < 0:
            raise DomainError(f"k must be finite and nonnegative, got {self.k!r}")
        if not (-1.0 <= lam <= 1.0):
            raise DomainError(f"lambda must lie in [-1, 1], got {self.lam!r}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class CircularMoment:
    """Trigonometric moment E[exp(i p theta)] split into real and imaginary parts."""

    order: int
    re: float
    im: float

    def __complex__(self):
        return complex(self.re, self.im)


def wrap_angle(theta):
    """Map angles into [-pi, pi] by shifting whole turns.

    Values already inside the closed interval are returned unchanged, so
    ``pi`` and ``-pi`` stay distinct. Out-of-range inputs congruent to the
    endpoint keep their sign (``3 pi -> pi``, ``-3 pi -> -pi``).
    """
    t = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("angles must be finite")
    out = np.where(
        np.abs(t) <= math.pi,
        t,
        t - TWO_PI * np.round(t / TWO_PI),
    )
    # round() can land exactly on the opposite endpoint
    out = np.where((np.abs(t) > math.pi) & (np.abs(out) >= math.pi), np.sign(t) * math.pi, out)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=256)
def _expansion(k: float, cfg: SeriesConfig):
    """I_0(k) and the ratios I_j(k)/I_0(k) for j = 1..J."""
    orders = bessel_i_orders(k, cfg)
    i0 = orders[0]
    ratios = np.array(orders[1:], dtype=float) / i0
    ratios.setflags(write=False)
    return i0, ratios


def _i0(k: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    return _expansion(k, cfg)[0]


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def pdf(params: SvmParams, theta, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Density at ``theta`` (direct exponential form)."""
    t = np.asarray(wrap_angle(theta))
    i0 = _i0(params.k, cfg)
    val = np.exp(params.k * np.cos(t)) * (1.0 + params.lam * np.sin(t)) / (TWO_PI * i0)
    return _scalar_or_array(val)


def logpdf(params: SvmParams, theta, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Log density; ``-inf`` at the zero of the density when ``|lam| == 1``."""
    t = np.asarray(wrap_angle(theta))
    i0 = _i0(params.k, cfg)
    with np.errstate(divide="ignore"):
        val = params.k * np.cos(t) + np.log1p(params.lam * np.sin(t)) - math.log(TWO_PI * i0)
    return _scalar_or_array(val)


def pdf_series(params: SvmParams, theta, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Density from the Bessel cosine expansion of ``exp(k cos theta)``.

    Kept as an independent evaluation path for consistency checks against
    :func:`pdf`.
    """
    t = np.asarray(wrap_angle(theta))
    _, ratios = _expansion(params.k, cfg)
    acc = np.ones_like(t)
    for j, r in enumerate(ratios, start=1):
        acc = acc + 2.0 * r * np.cos(j * t)
    return _scalar_or_array(acc * (1.0 + params.lam * np.sin(t)) / TWO_PI)


def _skew_term(k: float, i0: float, t):
    """(exp(-k) - exp(k cos t)) / (k I_0(k)), with its k -> 0 limit -(1 + cos t)."""
    c = np.cos(t)
    if k == 0.0:
        return -(1.0 + c)
    return (math.expm1(-k) - np.expm1(k * c)) / (k * i0)


def _base_cdf(ratios, t):
    """CDF of the symmetric von Mises base: (pi + t)/(2 pi) + (1/pi) sum (r_j/j) sin(j t)."""
    acc = math.pi + t
    for j, r in enumerate(ratios, start=1):
        acc = acc + (2.0 * r / j) * np.sin(j * t)
    return acc / TWO_PI


def cdf(params: SvmParams, theta, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Distribution function ``P(Theta <= theta)`` on [-pi, pi].

    Uses the Bessel sine series for the symmetric part plus the closed-form
    integral of ``lam sin(t) f_0(t)``. The endpoints are returned exactly as
    0 and 1, and round-off is clipped into [0, 1].
    """
    t = np.asarray(wrap_angle(theta))
    i0, ratios = _expansion(params.k, cfg)
    val = _base_cdf(ratios, t) + params.lam * _skew_term(params.k, i0, t) / TWO_PI
    val = np.where(t <= -math.pi, 0.0, np.where(t >= math.pi, 1.0, val))
    return _scalar_or_array(np.clip(val, 0.0, 1.0))


def quantile(params: SvmParams, u: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Inverse CDF by bisection on [-pi, pi].

    Bisection rather than Newton: the density can vanish at one point when
    ``|lam| == 1``.
    """
    u = float(u)
    if not (0.0 <= u <= 1.0):
        raise DomainError(f"u must lie in [0, 1], got {u!r}")
    if u == 0.0:
        return -math.pi
    if u == 1.0:
        return math.pi
    lo, hi = -math.pi, math.pi
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        f = cdf(params, mid, cfg)
        if f == u:
            return mid
        if f < u:
            lo = mid
        else:
            hi = mid


def mode_equation(params: SvmParams, theta):
    """Left side of ``k lam sin^2 t + k sin t - lam cos t = 0``.

    Its roots are the critical points of the density (plus, for
    ``|lam| == 1``, the density's zero).
    """
    t = np.asarray(theta, dtype=float)
    s = np.sin(t)
    val = params.k * params.lam * s * s + params.k * s - params.lam * np.cos(t)
    return _scalar_or_array(val)


def _bisect(fn, lo, hi, flo, xtol):
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mode(params: SvmParams) -> float:
    """Global maximizer of the density on [-pi, pi].

    Sign changes of the mode equation are bracketed on a 64-cell scan,
    refined by bisection, and the candidate (or endpoint) with the largest
    density wins.
    """
    k, lam = params.k, params.lam
    if lam == 0.0:
        return 0.0
    if k == 0.0:
        return math.copysign(math.pi / 2, lam)

    def eq(t):
        s = math.sin(t)
        return k * lam * s * s + k * s - lam * math.cos(t)

    grid = np.linspace(-math.pi, math.pi, _MODE_CELLS + 1)
    vals = [eq(t) for t in grid]
    candidates = [-math.pi, math.pi]
    for i in range(_MODE_CELLS):
        a, b, fa, fb = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if fa == 0.0:
            candidates.append(float(a))
        elif fa * fb < 0.0:
            candidates.append(_bisect(eq, float(a), float(b), fa, _MODE_XTOL))
    dens = pdf(params, np.array(candidates))
    return float(candidates[int(np.argmax(dens))])


def mean(params: SvmParams, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """E[theta] = (lam / k) (1 - exp(-k) / I_0(k)); equals ``lam`` at k = 0."""
    k, lam = params.k, params.lam
    if k == 0.0:
        return lam
    i0 = _i0(k, cfg)
    return lam / k * (1.0 - math.exp(-k) / i0)


def vm_circular_moment(k: float, p: int, cfg: SeriesConfig = DEFAULT_CONFIG) -> CircularMoment:
    """p-th trigonometric moment of the symmetric von Mises base: I_|p|(k)/I_0(k)."""
    if int(p) != p:
        raise DomainError(f"moment order must be an integer, got {p!r}")
    p = int(p)
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"k must be finite and nonnegative, got {k!r}")
    if p == 0:
        return CircularMoment(0, 1.0, 0.0)
    _, ratios = _expansion(float(k), cfg)
    q = abs(p)
    re = float(ratios[q - 1]) if q <= len(ratios) else 0.0
    return CircularMoment(p, re, 0.0)


def circular_moment(params: SvmParams, p: int, cfg: SeriesConfig = DEFAULT_CONFIG) -> CircularMoment:
    """p-th trigonometric moment of the skewed density.

    ``phi_p = phi*_p + (i lam / 2)(phi*_{p-1} - phi*_{p+1})`` where ``phi*``
    are the base moments.
    """
    base = vm_circular_moment(params.k, p, cfg)
    below = vm_circular_moment(params.k, p - 1, cfg).re
    above = vm_circular_moment(params.k, p + 1, cfg).re
    return CircularMoment(base.order, base.re, 0.5 * params.lam * (below - above))


def recover_concentration(pdf_at_0: float, pdf_at_pi: float) -> float:
    """Concentration from two density values: ``0.5 * ln(f(0) / f(pi))``.

    The skew factor is 1 at both angles, so the result does not depend on lam.
    """
    if not (pdf_at_0 > 0 and pdf_at_pi > 0):
        raise DomainError("density values must be strictly positive")
    return 0.5 * math.log(pdf_at_0 / pdf_at_pi)

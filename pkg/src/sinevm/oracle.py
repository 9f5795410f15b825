"""Brute-force reference numerics.

Adaptive Simpson quadrature and a grid-scan maximizer. The density is used
strictly as a black-box function here; nothing in this module touches the
Bessel series or the series CDF, so it can pin the closed forms elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import SvmParams, pdf
from .errors import ConvergenceError, DegenerateInputError

__all__ = [
    "QuadResult",
    "integrate",
    "conditional_mean_below",
    "conditional_mean_above",
    "brute_mode",
]

MAX_DEPTH = 60
# breadth-first refinement doubles the work per level; stop runaway tolerances early
MAX_EVALUATIONS = 5_000_000
MIN_DEPTH = 4
_MASS_FLOOR = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_err_estimate: float
    evaluations: int


def _as_vectorized(f):
    def g(x):
        try:
            y = np.asarray(f(x), dtype=float)
        except TypeError:
            y = None
        if y is None or y.shape != x.shape:
            y = np.array([float(f(float(xi))) for xi in x])
        return y

    return g


def integrate(f: Callable, lo: float, hi: float, tol: float = 1e-12) -> QuadResult:
    """Adaptive Simpson quadrature of ``f`` over [lo, hi].

    Intervals are refined level by level (all open intervals of one depth
    are evaluated in a single vectorized call), each half inheriting half
    the parent's tolerance. An interval is accepted once the two-halves
    Simpson sum differs from the whole-interval one by at most ``15 * tol``;
    the Richardson-corrected value is accumulated.

    ``f`` should accept a numpy array; scalar-only callables are looped.

    Raises
    ------
    ConvergenceError
        An interval still fails the test after ``MAX_DEPTH`` bisections,
        shrinks to floating-point resolution unconverged, or the evaluation
        budget runs out. The message names the offending subinterval.
    """
    lo, hi, tol = float(lo), float(hi), float(tol)
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    fv = _as_vectorized(f)

    a = np.array([lo])
    b = np.array([hi])
    m = 0.5 * (a + b)
    y = fv(np.concatenate([a, m, b]))
    fa, fm, fb = y[0:1], y[1:2], y[2:3]
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tols = np.array([tol])
    evals = 3
    if lo == hi:
        return QuadResult(0.0, 0.0, evals)

    total = 0.0
    err = 0.0
    for depth in range(1, MAX_DEPTH + 1):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        y = fv(np.concatenate([lm, rm]))
        n = a.size
        flm, frm = y[:n], y[n:]
        evals += 2 * n
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if not np.all(np.isfinite(delta)):
            bad = int(np.flatnonzero(~np.isfinite(delta))[0])
            raise ConvergenceError(f"non-finite integrand on [{float(a[bad])!r}, {float(b[bad])!r}]")
        collapsed = (lm <= a) | (lm >= m) | (rm <= m) | (rm >= b)
        done = (np.abs(delta) <= 15.0 * tols) & ((depth >= MIN_DEPTH) | collapsed)
        stuck = collapsed & ~done
        if stuck.any():
            i = int(np.flatnonzero(stuck)[0])
            raise ConvergenceError(
                f"adaptive Simpson reached floating-point resolution on [{float(a[i])!r}, {float(b[i])!r}]"
            )
        if done.any():
            total += float(np.sum(left[done] + right[done] + delta[done] / 15.0))
            err += float(np.sum(np.abs(delta[done]))) / 15.0
        keep = ~done
        if not keep.any():
            return QuadResult(total, err, evals)
        if depth == MAX_DEPTH or evals + 4 * int(keep.sum()) > MAX_EVALUATIONS:
            i = int(np.flatnonzero(keep)[0])
            limit = f"depth {MAX_DEPTH}" if depth == MAX_DEPTH else f"{MAX_EVALUATIONS} evaluations"
            raise ConvergenceError(
                f"adaptive Simpson exceeded {limit} on [{float(a[i])!r}, {float(b[i])!r}]"
            )
        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        flm, frm = flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        half_tol = 0.5 * tols[keep]
        # children: [a, m] with midpoint lm, [m, b] with midpoint rm
        a, m, b, fa, fm, fb, whole = (
            np.concatenate([a, m]),
            np.concatenate([0.5 * (a + m), 0.5 * (m + b)]),
            np.concatenate([m, b]),
            np.concatenate([fa, fm]),
            np.concatenate([flm, frm]),
            np.concatenate([fm, fb]),
            np.concatenate([left, right]),
        )
        tols = np.concatenate([half_tol, half_tol])
    raise AssertionError("unreachable")


def _density(params):
    return lambda t: pdf(params, t)


def _conditional_mean(params, lo, hi, tol):
    dens = _density(params)
    coarse = integrate(dens, lo, hi, 1e-6).value
    if coarse <= _MASS_FLOOR:
        raise DegenerateInputError(
            f"probability of [{lo}, {hi}] is {coarse:.3g}; conditional mean undefined"
        )
    # absolute tolerance scaled to the mass so the ratio keeps ~tol accuracy
    abs_tol = tol * min(1.0, coarse)
    mass = integrate(dens, lo, hi, abs_tol).value
    first = integrate(lambda t: t * dens(t), lo, hi, abs_tol).value
    return first / mass


def conditional_mean_below(params: SvmParams, theta1: float, tol: float = 1e-12) -> float:
    """E[theta | theta <= theta1] by quadrature of ``t f(t)`` and ``f(t)``."""
    return _conditional_mean(params, -math.pi, float(theta1), tol)


def conditional_mean_above(params: SvmParams, theta1: float, tol: float = 1e-12) -> float:
    """E[theta | theta >= theta1] by quadrature over [theta1, pi]."""
    return _conditional_mean(params, float(theta1), math.pi, tol)


def brute_mode(params: SvmParams, n_grid: int = 100_001, xtol: float = 1e-12) -> float:
    """Maximize the density by a dense grid scan plus golden-section refinement.

    Golden section on density values stalls near sqrt(eps) because the peak
    is flat to round-off there, so the result is polished by bisecting on
    the sign of a central-difference slope of the density.
    """
    grid = np.linspace(-math.pi, math.pi, n_grid)
    vals = np.asarray(pdf(params, grid))
    i = int(np.argmax(vals))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, n_grid - 1)]

    def f(t):
        return float(pdf(params, t))

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    best = _polish_peak(f, 0.5 * (a + b))
    if vals[i] > f(best):
        return float(grid[i])
    return float(best)


def _polish_peak(f, t0, width=1e-6, step=1e-5, xtol=1e-13):
    def slope(t):
        return f(t + step) - f(t - step)

    lo, hi = t0 - width, t0 + width
    if lo - step < -math.pi or hi + step > math.pi:
        return t0
    s_lo, s_hi = slope(lo), slope(hi)
    if not (s_lo > 0 > s_hi):
        return t0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        s = slope(mid)
        if s > 0:
            lo = mid
        elif s < 0:
            hi = mid
        else:
            return mid
    return 0.5 * (lo + hi)

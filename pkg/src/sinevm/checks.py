"""Invariant suite run by ``sinevm verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import characterization as ch
from .core import (
    SvmParams,
    cdf,
    circular_moment,
    mean,
    mode,
    mode_equation,
    pdf,
    pdf_series,
    quantile,
    recover_concentration,
)
from .oracle import integrate

QUAD_TOL = 1e-12
RECONSTRUCTION_GRID = 2001


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_abs_err: float
    tol: float
    passed: bool
    note: str = ""


def _result(name, err, tol, note=""):
    return CheckResult(name, float(err), float(tol), bool(err < tol), note)


def _skipped(name, tol, note):
    return CheckResult(name, 0.0, float(tol), True, note)


def check_normalization(params):
    q = integrate(lambda t: pdf(params, t), -math.pi, math.pi, QUAD_TOL)
    return _result("normalization", abs(q.value - 1.0), 1e-10)


def check_series_consistency(params):
    t = np.linspace(-math.pi, math.pi, 721)
    err = np.max(np.abs(np.asarray(pdf_series(params, t)) - np.asarray(pdf(params, t))))
    return _result("pdf_series_consistency", err, 1e-12)


def check_cdf_endpoints(params):
    t = np.linspace(-math.pi, math.pi, 2001)
    F = np.asarray(cdf(params, t))
    err = max(abs(F[0]), abs(F[-1] - 1.0))
    ok = bool(np.all(np.diff(F) >= 0.0))
    res = _result("cdf_endpoints_monotone", err, 1e-12)
    if not ok:
        return CheckResult(res.name, res.max_abs_err, res.tol, False, "cdf decreases on grid")
    return res


def check_cdf_derivative(params, step=1e-5):
    t = np.linspace(-math.pi, math.pi, 103)[1:-1]
    slope = (np.asarray(cdf(params, t + step)) - np.asarray(cdf(params, t - step))) / (2 * step)
    return _result("cdf_pdf_derivative", np.max(np.abs(slope - np.asarray(pdf(params, t)))), 1e-6)


def check_mean(params):
    q = integrate(lambda t: t * pdf(params, t), -math.pi, math.pi, QUAD_TOL)
    return _result("mean_vs_quadrature", abs(q.value - mean(params)), 1e-10)


def check_moments(params, orders=range(6)):
    worst = 0.0
    for p in orders:
        m = circular_moment(params, p)
        re = integrate(lambda t: np.cos(p * t) * pdf(params, t), -math.pi, math.pi, QUAD_TOL).value
        im = integrate(lambda t: np.sin(p * t) * pdf(params, t), -math.pi, math.pi, QUAD_TOL).value
        worst = max(worst, abs(m.re - re), abs(m.im - im))
    return _result("circular_moments", worst, 1e-10)


def check_concentration(params):
    k = recover_concentration(pdf(params, 0.0), pdf(params, math.pi))
    return _result("concentration_recovery", abs(k - params.k), 1e-12)


def check_mode(params):
    m = mode(params)
    return _result("mode_residual", abs(mode_equation(params, m)), 1e-12)


def check_quantile(params):
    us = [0.01] + [round(0.1 * i, 1) for i in range(1, 10)] + [0.99]
    err = max(abs(cdf(params, quantile(params, u)) - u) for u in us)
    return _result("quantile_roundtrip", err, 1e-10)


def check_truncation(params, tol, tail):
    fn = ch.verify_lower_truncation if tail == "lower" else ch.verify_upper_truncation
    rep = fn(params, 101, tol)
    return _result(f"{tail}_truncation", rep.max_abs_err, tol, "; ".join(rep.notes))


def check_reconstruction(params, which):
    name = f"reconstruct_from_{which}"
    if abs(params.lam) == 1.0:
        return _skipped(name, 1e-5, "skipped: reconstruction needs |lambda| < 1")
    fn = ch.reconstruct_from_g if which == "g" else ch.reconstruct_from_h
    grid = fn(params, RECONSTRUCTION_GRID)
    err = np.max(np.abs(grid.values - np.asarray(pdf(params, grid.thetas))))
    return _result(name, err, 1e-5, f"n_grid={RECONSTRUCTION_GRID}")


def check_log_slope(params, which):
    name = f"log_slope_{which}"
    if abs(params.lam) == 1.0:
        return _skipped(name, 1e-5, "skipped: needs |lambda| < 1")
    return _result(name, ch.log_slope_discrepancy(params, RECONSTRUCTION_GRID, which), 1e-5)


def run_all(params: SvmParams, tol: float = 1e-8) -> list[CheckResult]:
    """Every invariant check, in a fixed order."""
    return [
        check_normalization(params),
        check_series_consistency(params),
        check_cdf_endpoints(params),
        check_cdf_derivative(params),
        check_mean(params),
        check_moments(params),
        check_concentration(params),
        check_mode(params),
        check_quantile(params),
        check_truncation(params, tol, "lower"),
        check_truncation(params, tol, "upper"),
        check_reconstruction(params, "g"),
        check_reconstruction(params, "h"),
        check_log_slope(params, "g"),
        check_log_slope(params, "h"),
    ]

"""Modified Bessel functions of the first kind, integer order.

Evaluated with the ascending power series

    I_j(k) = sum_{i>=0} (k/2)^(2i+j) / (i! (i+j)!)

truncated once the next term drops below ``rel_tol`` times the running sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = ["SeriesConfig", "BesselEval", "bessel_eval", "bessel_i", "bessel_i_orders"]


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation controls shared by every series in the package."""

    rel_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be positive and finite, got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class BesselEval:
    order: int
    argument: float
    value: float
    terms_used: int


def _check_args(j, k):
    if int(j) != j or j < 0:
        raise DomainError(f"order must be a nonnegative integer, got {j!r}")
    k = float(k)
    if not math.isfinite(k):
        raise DomainError(f"argument must be finite, got {k!r}")
    if k < 0:
        raise DomainError(f"argument must be nonnegative, got {k!r}")
    return int(j), k


def bessel_eval(j: int, k: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> BesselEval:
    """Evaluate I_j(k) and report how many series terms were summed."""
    j, k = _check_args(j, k)
    if k == 0.0:
        return BesselEval(j, k, 1.0 if j == 0 else 0.0, 1)

    half = 0.5 * k
    quarter_sq = half * half
    # (k/2)^j / j! via logs so large orders underflow quietly instead of overflowing
    if j == 0:
        term = 1.0
    elif half == 0.0:
        term = 0.0
    else:
        log_first = j * math.log(half) - math.lgamma(j + 1)
        term = math.exp(log_first) if log_first > -745.0 else 0.0
    if term == 0.0:
        return BesselEval(j, k, 0.0, 1)

    total = term
    for i in range(1, cfg.max_terms + 1):
        term *= quarter_sq / (i * (i + j))
        if term <= cfg.rel_tol * total:
            return BesselEval(j, k, total, i)
        total += term
    raise ConvergenceError(
        f"I_{j}({k}) series did not converge within max_terms={cfg.max_terms}"
    )


def bessel_i(j: int, k: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Modified Bessel function of the first kind I_j(k).

    Parameters
    ----------
    j : int
        Order, ``j >= 0``.
    k : float
        Argument, finite and ``k >= 0``.
    cfg : SeriesConfig
        Truncation controls.

    Raises
    ------
    DomainError
        Negative or non-integer order, negative or non-finite argument.
    ConvergenceError
        The series needs more than ``cfg.max_terms`` terms.
    """
    return bessel_eval(j, k, cfg).value


def bessel_i_orders(k: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> list[float]:
    """Return ``[I_0(k), I_1(k), ..., I_J(k)]`` with J the first order where
    ``I_J(k) < rel_tol * I_0(k)``.

    This is the coefficient list of the cosine expansion of ``exp(k cos t)``;
    orders beyond J contribute below the configured relative tolerance.
    """
    _, k = _check_args(0, k)
    values = [bessel_i(0, k, cfg)]
    if k == 0.0:
        return values
    for j in range(1, cfg.max_terms + 1):
        v = bessel_i(j, k, cfg)
        values.append(v)
        if v < cfg.rel_tol * values[0]:
            return values
    raise ConvergenceError(
        f"cosine expansion at k={k} did not converge within max_terms={cfg.max_terms}"
    )

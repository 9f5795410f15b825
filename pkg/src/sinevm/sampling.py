"""Exact random variates from the sine-skewed von Mises distribution.

A symmetric von Mises angle ``t0`` is drawn with the Best-Fisher
wrapped-Cauchy rejection sampler, then kept with probability
``(1 + lam sin t0) / 2`` and reflected to ``-t0`` otherwise. Because the base
density is even, the result has density ``f_0(t)(1 + lam sin t)`` exactly.
"""

from __future__ import annotations

import math

import numpy as np

from .core import SvmParams
from .errors import DegenerateInputError, DomainError

__all__ = [
    "RandomStream",
    "sample_base_vm",
    "skew_flip",
    "sample_svm",
    "sample_batch",
]

_UINT64_MAX = 2**64 - 1


class RandomStream:
    """Seeded, single-owner source of uniforms (PCG64).

    Not safe for concurrent use; give each worker its own seed.
    """

    def __init__(self, seed: int):
        if int(seed) != seed or not 0 <= seed <= _UINT64_MAX:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, size=None):
        """Uniform draws on [0, 1)."""
        return self._gen.random(size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed})"


def _envelope_r(k: float) -> float:
    # Best & Fisher (1979): tau = 1 + sqrt(1 + 4k^2), rho = (tau - sqrt(2 tau)) / (2k),
    # r = (1 + rho^2) / (2 rho). rho rewritten to avoid cancellation at small k.
    s = math.sqrt(1.0 + 4.0 * k * k)
    tau = 1.0 + s
    rho = 2.0 * k * tau / ((s + 1.0) * (tau + math.sqrt(2.0 * tau)))
    return (1.0 + rho * rho) / (2.0 * rho)


def _base_vm_batch(k: float, n: int, stream: RandomStream):
    """Draw ``n`` von Mises(0, k) angles; also return the number of proposals."""
    if k == 0.0:
        return math.pi * (2.0 * stream.uniform(n) - 1.0), n
    r = _envelope_r(k)
    out = np.empty(n)
    filled = 0
    proposals = 0
    while filled < n:
        m = int((n - filled) / 0.6) + 16
        u = stream.uniform((3, m))
        z = np.cos(math.pi * u[0])
        w = (1.0 + r * z) / (r + z)
        c = k * (r - w)
        u2 = u[1]
        accept = (c * (2.0 - c) - u2 > 0.0)
        with np.errstate(divide="ignore"):
            accept |= np.log(c / u2) + 1.0 - c >= 0.0
        theta = np.sign(u[2] - 0.5) * np.arccos(np.clip(w, -1.0, 1.0))
        idx = np.flatnonzero(accept)
        take = idx[: n - filled]
        out[filled : filled + take.size] = theta[take]
        filled += take.size
        # proposals actually consumed up to the last accepted draw used
        proposals += (int(take[-1]) + 1) if filled == n and take.size else m
    return out, proposals


def sample_base_vm(k: float, stream: RandomStream) -> float:
    """One draw from the symmetric von Mises density ``exp(k cos t) / (2 pi I_0(k))``."""
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"k must be finite and nonnegative, got {k!r}")
    return float(_base_vm_batch(float(k), 1, stream)[0][0])


def skew_flip(theta0, u, lam: float):
    """Keep ``theta0`` when ``u < (1 + lam sin theta0) / 2``, else return ``-theta0``."""
    theta0 = np.asarray(theta0, dtype=float)
    keep = np.asarray(u) < 0.5 * (1.0 + lam * np.sin(theta0))
    out = np.where(keep, theta0, -theta0)
    return float(out) if out.ndim == 0 else out


def sample_svm(params: SvmParams, stream: RandomStream) -> float:
    """One sine-skewed von Mises draw: one base draw, one uniform."""
    theta0 = sample_base_vm(params.k, stream)
    return skew_flip(theta0, stream.uniform(), params.lam)


def sample_batch(params: SvmParams, n: int, stream: RandomStream) -> np.ndarray:
    """``n`` independent draws, deterministic for a given stream seed."""
    if int(n) != n or n < 1:
        raise DegenerateInputError(f"n must be a positive integer, got {n!r}")
    base, _ = _base_vm_batch(params.k, int(n), stream)
    return skew_flip(base, stream.uniform(int(n)), params.lam).reshape(-1)

"""Theta sums psi(u) = sum_{n>=1} exp(-pi u n^2) and theta(u) = 1 + 2 psi(u)."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "ThetaValue",
    "psi",
    "psi_array",
    "theta_full",
    "psi_functional_residual",
    "max_terms",
]

REL_CUTOFF = 1e-18
SMALL_U = 0.05


class ThetaValue(NamedTuple):
    value: float
    terms_used: int


def _check(u: float) -> float:
    u = float(u)
    if not (u > 0.0 and math.isfinite(u)):
        raise ValueError("theta argument must be positive")
    return u


def _psi_direct(u: float) -> ThetaValue:
    total = 0.0
    n = 1
    while True:
        total += math.exp(-math.pi * u * n * n)
        nxt = math.exp(-math.pi * u * (n + 1) * (n + 1))
        if nxt < REL_CUTOFF * (total + 1e-300):
            return ThetaValue(total, n)
        n += 1


def psi(u: float) -> ThetaValue:
    """psi(u) with the number of series terms that were summed.

    Direct summation stops at the first N whose successor term falls below
    1e-18 of the running sum. For u < 0.05 the value comes from the
    functional equation psi(u) = psi(1/u)/sqrt(u) + 1/(2 sqrt(u)) - 1/2.
    """
    u = _check(u)
    if u < SMALL_U:
        inv = _psi_direct(1.0 / u)
        r = math.sqrt(u)
        return ThetaValue(inv.value / r + 0.5 / r - 0.5, inv.terms_used)
    return _psi_direct(u)


def max_terms(u: float) -> int:
    """Upper bound on ``psi(u).terms_used`` for direct summation."""
    return 1 + math.ceil(math.sqrt(18.0 * math.log(10.0) / (math.pi * u)))


def psi_array(u) -> np.ndarray:
    """Vectorised psi for quadrature kernels (``u > 0`` elementwise)."""
    u = np.asarray(u, dtype=float)
    if u.size == 0:
        return np.zeros_like(u)
    if not np.all(u > 0.0):
        raise ValueError("theta argument must be positive")
    small = u < SMALL_U
    if np.any(small):
        out = np.empty_like(u)
        big = ~small
        if np.any(big):
            out[big] = psi_array(u[big])
        us = u[small]
        r = np.sqrt(us)
        out[small] = psi_array(1.0 / us) / r + 0.5 / r - 0.5
        return out
    nmax = max_terms(float(u.min()))
    out = np.zeros_like(u)
    # smallest terms first
    for n in range(nmax, 0, -1):
        out += np.exp(-math.pi * n * n * u)
    return out


def theta_full(u: float) -> float:
    """theta(u) = sum over all integers n of exp(-pi u n^2)."""
    return 1.0 + 2.0 * psi(u).value


def psi_functional_residual(u: float) -> float:
    """psi(u) - [psi(1/u)/sqrt(u) + 1/(2 sqrt(u)) - 1/2], both sides summed
    directly."""
    u = _check(u)
    r = math.sqrt(u)
    lhs = _psi_direct(u).value
    rhs = _psi_direct(1.0 / u).value / r + 0.5 / r - 0.5
    return lhs - rhs

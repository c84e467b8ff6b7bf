"""Euler-Maclaurin evaluation of the continued zeta function on C \\ {1}.

The production path is the finite-N form

    aleph(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
               + sum_{j=1}^{M} b_2j/(2j)! (s)_{2j-1} N^(-s-2j+1),

where (s)_k = s(s+1)...(s+k-1). ``sigma_M_direct`` evaluates the
N -> infinity remainder integral of the same expansion and is kept as an
independent cross-check.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bernoulli import bernoulli_float, bernoulli_polynomial, bernoulli_sup, bernoulli_table
from .numerics import as_complex

__all__ = [
    "EmParams",
    "EmResult",
    "UnconvergedWarning",
    "REMAINDER_LIMIT",
    "auto_params",
    "zeta_dirichlet",
    "evaluate_em",
    "aleph_em",
    "em_constant_part",
    "sigma_M_direct",
]

REMAINDER_LIMIT = 1e-8
_EPS = 2.0**-52


class UnconvergedWarning(RuntimeWarning):
    """The Euler-Maclaurin remainder estimate exceeds ``REMAINDER_LIMIT``."""


@dataclass(frozen=True)
class EmParams:
    N: int
    M: int = 12

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("EmParams.N must be >= 2")
        if self.M < 1:
            raise ValueError("EmParams.M must be >= 1")
        # one extra index is needed for the remainder estimate
        if 2 * self.M + 2 > bernoulli_table().max_index:
            raise ValueError("EmParams.M too large for the Bernoulli table")


@dataclass(frozen=True)
class EmResult:
    value: complex
    remainder: float
    params: EmParams

    @property
    def converged(self) -> bool:
        return self.remainder <= REMAINDER_LIMIT


def zeta_dirichlet(s, terms: int) -> complex:
    """Partial sum of n^-s for n = 1..terms (only meaningful for Re s > 1)."""
    s = as_complex(s)
    if s.real <= 1.0:
        raise ValueError("Dirichlet series diverges for Re(s) <= 1")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    logn = np.log(np.arange(terms, 0, -1, dtype=float))
    if s.imag == 0.0:
        return complex(float(np.sum(np.exp(-s.real * logn))), 0.0)
    return complex(np.sum(np.exp(-s * logn)))


def _em_sum(s: complex, N: int, M: int):
    """Finite-N expansion, its remainder estimate and the size of the
    largest summand (a proxy for cancellation error)."""
    logn = np.log(np.arange(N - 1, 0, -1, dtype=float))
    powers = np.exp(-s * logn)
    head = complex(np.sum(powers))
    scale = float(np.max(np.abs(powers))) if powers.size else 0.0

    logN = math.log(N)
    N_ms = cmath.exp(-s * logN)
    tail = N * N_ms / (s - 1.0) + 0.5 * N_ms
    scale = max(scale, abs(tail))

    corr = 0j
    poch = s  # (s)_{2j-1}
    Npow = N_ms / N  # N^(-s-2j+1) at j = 1
    fact = 2.0  # (2j)!
    for j in range(1, M + 1):
        term = bernoulli_float(2 * j) / fact * poch * Npow
        corr += term
        scale = max(scale, abs(term))
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        Npow /= N * N
        fact *= (2 * j + 1) * (2 * j + 2)
    # poch, Npow, fact now belong to j = M + 1
    remainder = 2.0 * abs(bernoulli_float(2 * M + 2) / fact * poch * Npow)
    return head + tail + corr, remainder, scale


def auto_params(s) -> EmParams:
    """Choose (N, M) for ``s``.

    For Re s >= 0 this is N = max(20, ceil(2|Im s|)), M = 12. Left of the
    imaginary axis the summands grow like N^(1-Re s), so N is reduced
    (never below the point where the correction terms still decrease) to
    balance truncation against cancellation.
    """
    s = as_complex(s)
    M = 12
    N_default = max(20, math.ceil(2.0 * abs(s.imag)))
    if s.real >= 0.0:
        return EmParams(N_default, M)
    N_low = max(2, math.ceil(2.0 * abs(s.imag)), math.ceil(abs(s + 2 * M) / (2.0 * math.pi)) + 1)
    best = None
    N = N_low
    while N <= N_default:
        _, rem, scale = _em_sum(s, N, M)
        total = rem + 8.0 * _EPS * scale
        if best is None or total < best[0]:
            best = (total, N)
        N = max(N + 1, int(N * 1.25))
    if best is None:
        return EmParams(N_default, M)
    return EmParams(best[1], M)


def evaluate_em(s, params: Optional[EmParams] = None) -> EmResult:
    """Euler-Maclaurin value of the continuation with its remainder estimate
    (twice the first omitted correction term)."""
    s = as_complex(s)
    if s == 1.0:
        raise ValueError("pole of the continuation at s = 1")
    params = params or auto_params(s)
    value, rem, _ = _em_sum(s, params.N, params.M)
    return EmResult(value, rem, params)


def aleph_em(s, params: Optional[EmParams] = None) -> complex:
    """Continued zeta(s) by Euler-Maclaurin; warns if unconverged."""
    res = evaluate_em(s, params)
    if not res.converged:
        warnings.warn(
            f"unconverged: Euler-Maclaurin remainder {res.remainder:.3g} at s={complex(s)}",
            UnconvergedWarning,
            stacklevel=2,
        )
    return res.value


def em_constant_part(s, M: int) -> complex:
    """1/(s-1) + 1/2 + sum_{j<=M} b_2j/(2j)! (s)_{2j-1}."""
    s = as_complex(s)
    total = 1.0 / (s - 1.0) + 0.5
    poch = s
    fact = 2.0
    for j in range(1, M + 1):
        total += bernoulli_float(2 * j) / fact * poch
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    return total


# 30-point Gauss-Legendre rule on [0, 1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(30)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W

SIGMA_TAIL_TOL = 1e-12
SIGMA_MAX_INTERVALS = 20_000_000
_CHUNK = 50_000


def sigma_M_direct(s, M: int) -> complex:
    """The Euler-Maclaurin remainder

        sigma_M(s) = -(s)_{2M+1}/(2M+1)! * int_1^oo B*_{2M+1}(x) x^(-s-2M-1) dx

    by Gauss-Legendre quadrature on each unit interval [k, k+1] (the
    integrand has kinks at the integers). Intervals are added until
    max|B_{2M+1}| K^(-Re s-2M) / (Re s+2M) < 1e-12.
    """
    s = as_complex(s)
    if not 1 <= M <= 8:
        raise ValueError("sigma_M domain: need 1 <= M <= 8")
    if s.real <= 1 - 2 * M:
        raise ValueError("sigma_M domain: need Re(s) > 1 - 2M")
    order = 2 * M + 1
    p = s.real + 2 * M
    bmax = bernoulli_sup(order)
    # smallest K with bmax * K^-p / p below the tail tolerance
    K = math.ceil(math.exp(math.log(bmax / (SIGMA_TAIL_TOL * p)) / p))
    K = max(K, 2)
    if K - 1 > SIGMA_MAX_INTERVALS:
        raise ValueError(f"sigma_M domain: tail needs {K} unit intervals")

    Bvals = bernoulli_polynomial(order, _GL_X)
    expo = -s - order
    total = 0j
    # from the far end so small contributions are added first
    for stop in range(K, 1, -_CHUNK):
        start = max(1, stop - _CHUNK)
        k = np.arange(start, stop, dtype=float)[:, None]
        x = k + _GL_X[None, :]
        vals = np.exp(expo * np.log(x)) * (Bvals * _GL_W)[None, :]
        total += complex(np.sum(vals[::-1]))

    poch = 1 + 0j
    for i in range(order):
        poch *= s + i
    return -poch / math.factorial(order) * total

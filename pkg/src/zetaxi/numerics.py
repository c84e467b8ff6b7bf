"""Numerical foundation: complex input checks, Romberg quadrature, truncated
improper integrals on [1, oo) and the complex Gamma function."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "QuadratureWarning",
    "as_complex",
    "romberg",
    "improper_integral",
    "complex_gamma",
    "log_gamma",
    "rgamma",
    "sinpi",
]

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)


class QuadratureWarning(RuntimeWarning):
    """Emitted when a quadrature does not reach its error target."""


def as_complex(s) -> complex:
    """Coerce ``s`` to ``complex`` and reject NaN/inf parts."""
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex argument {s!r}")
    return z


@dataclass(frozen=True)
class QuadratureConfig:
    """Romberg settings shared by every integral in the package.

    ``order`` is the number of Richardson columns kept in the tableau, so a
    polynomial of degree ``2*order - 1`` is integrated exactly. ``cutoff``
    replaces the infinite upper limit of the theta integrals and ``tol`` is
    the absolute error target.
    """

    order: int = 5
    max_iters: int = 20
    cutoff: float = 60.0
    tol: float = 1e-12

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 2:
            raise ValueError("order must be an integer >= 2")
        if int(self.max_iters) != self.max_iters or not 1 <= self.max_iters <= 30:
            raise ValueError("max_iters must be an integer in [1, 30]")
        if not (math.isfinite(self.cutoff) and self.cutoff > 1.0):
            raise ValueError("cutoff must be finite and > 1")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError("tol must be finite and > 0")

    def with_tol(self, tol: float) -> "QuadratureConfig":
        return QuadratureConfig(self.order, self.max_iters, self.cutoff, tol)


class QuadResult(NamedTuple):
    value: float
    err_est: float
    levels: int
    converged: bool


def _evaluate(f, x: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
    else:
        y = np.fromiter((f(float(t)) for t in x), dtype=float, count=x.size)
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite integrand")
    return y


def romberg(
    f: Callable,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    *,
    vectorized: bool = True,
) -> QuadResult:
    """Romberg integration of ``f`` over ``[a, b]``.

    Each level halves the trapezoid step and only evaluates the new
    midpoints. Richardson extrapolation is limited to ``cfg.order`` columns.
    ``err_est`` is the change of the best extrapolated value between the
    last two levels; iteration stops once it drops below ``cfg.tol`` (but not
    before ``cfg.order`` levels, which guards against aliasing on coarse
    grids). A result with ``err_est > tol`` is returned with
    ``converged=False``; the caller decides what to do with it.

    ``f`` must accept a float ndarray unless ``vectorized=False``.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError("romberg requires a < b")

    h = b - a
    ends = _evaluate(f, np.array([a, b]), vectorized)
    prev = [0.5 * h * (ends[0] + ends[1])]
    best = prev[0]
    err = math.inf
    min_levels = min(cfg.order, cfg.max_iters)
    level = 0
    for level in range(1, cfg.max_iters + 1):
        npts = 1 << (level - 1)
        h *= 0.5
        x = a + h * (2.0 * np.arange(npts) + 1.0)
        row = [0.5 * prev[0] + h * float(np.sum(_evaluate(f, x, vectorized)))]
        for m in range(1, min(level, cfg.order - 1) + 1):
            row.append(row[m - 1] + (row[m - 1] - prev[m - 1]) / (4.0**m - 1.0))
        err = abs(row[-1] - best)
        best = row[-1]
        prev = row
        if level >= min_levels and err < cfg.tol:
            return QuadResult(best, err, level, True)
    return QuadResult(best, err, level, err < cfg.tol)


def improper_integral(
    f: Callable,
    cfg: QuadratureConfig | None = None,
    *,
    scale: float = 1.0,
    power: float = 0.0,
    vectorized: bool = True,
    warn: bool = True,
) -> QuadResult:
    """Integrate ``f`` over ``[1, oo)`` by truncating at ``cfg.cutoff``.

    The caller certifies ``|f(u)| <= scale * u**power * exp(-pi*u)`` for
    ``u >= cutoff``. The neglected tail is then at most
    ``scale * U**power * exp(-pi*U) / (pi - power/U)``, which must not exceed
    ``cfg.tol``.
    """
    cfg = cfg or QuadratureConfig()
    U = cfg.cutoff
    rate = math.pi - max(power, 0.0) / U
    if rate <= 0.0:
        raise ValueError("cutoff too small")
    tail = scale * math.exp(power * math.log(U) - math.pi * U) / rate
    if tail > cfg.tol:
        raise ValueError(f"cutoff too small (tail bound {tail:.3g} > tol {cfg.tol:.3g})")
    res = romberg(f, 1.0, U, cfg, vectorized=vectorized)
    if warn and not res.converged:
        warnings.warn(
            f"Romberg did not converge: err_est={res.err_est:.3g} > tol={cfg.tol:.3g}",
            QuadratureWarning,
            stacklevel=2,
        )
    return res


# Lanczos approximation, g = 7, 9 terms.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def sinpi(z) -> complex:
    """sin(pi*z) with exact argument reduction of the real part."""
    z = complex(z)
    x = math.fmod(z.real, 2.0)
    y = math.pi * z.imag
    return complex(
        math.sin(math.pi * x) * math.cosh(y), math.cos(math.pi * x) * math.sinh(y)
    )


def _log_sinpi(z: complex) -> complex:
    # avoids overflow of sinh/cosh for large |Im z|
    if abs(math.pi * z.imag) < 30.0:
        return cmath.log(sinpi(z))
    w = complex(math.pi * math.fmod(z.real, 2.0), math.pi * z.imag)
    # sin w = (e^{iw} - e^{-iw}) / 2i; keep the dominant exponential in log form
    if w.imag > 0:
        return -1j * w + cmath.log(0.5j) + cmath.log(1.0 - cmath.exp(2j * w))
    return 1j * w + cmath.log(-0.5j) + cmath.log(1.0 - cmath.exp(-2j * w))


def _log_gamma_lanczos(z: complex) -> complex:
    # valid for Re z >= 1/2
    z = z - 1.0
    acc = complex(_LANCZOS_COEF[0])
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _small_positive_integer(z: complex) -> bool:
    return z.imag == 0.0 and 1.0 <= z.real <= 171.0 and z.real == math.floor(z.real)


def log_gamma(s) -> complex:
    """A logarithm of Gamma(s).

    For ``Re s >= 1/2`` this is the principal (continuous) log-gamma. Below
    that the reflection formula is used and the imaginary part is only
    defined modulo 2*pi.
    """
    z = as_complex(s)
    if _is_nonpositive_integer(z):
        raise ValueError("gamma pole at non-positive integer")
    if _small_positive_integer(z):
        return complex(math.lgamma(z.real), 0.0)
    if z.real >= 0.5:
        return _log_gamma_lanczos(z)
    return LOG_PI - _log_sinpi(z) - _log_gamma_lanczos(1.0 - z)


def complex_gamma(s) -> complex:
    """Gamma(s) for complex ``s`` (Lanczos, reflection for Re s < 1/2)."""
    z = as_complex(s)
    if _is_nonpositive_integer(z):
        raise ValueError("gamma pole at non-positive integer")
    if _small_positive_integer(z):
        # exact factorials, rounded once
        return complex(float(math.factorial(int(z.real) - 1)), 0.0)
    if z.real >= 0.5:
        return cmath.exp(_log_gamma_lanczos(z))
    if abs(z.imag) < 30.0:
        return math.pi / (sinpi(z) * cmath.exp(_log_gamma_lanczos(1.0 - z)))
    return cmath.exp(log_gamma(z))


def rgamma(s) -> complex:
    """1/Gamma(s); entire, exactly zero at the non-positive integers."""
    z = as_complex(s)
    if _is_nonpositive_integer(z):
        return 0j
    if _small_positive_integer(z):
        return complex(1 / math.factorial(int(z.real) - 1), 0.0)  # int / int rounds once
    if z.real >= 0.5:
        return cmath.exp(-_log_gamma_lanczos(z))
    if abs(z.imag) < 30.0:
        return sinpi(z) * cmath.exp(_log_gamma_lanczos(1.0 - z)) / math.pi
    return cmath.exp(-log_gamma(z))

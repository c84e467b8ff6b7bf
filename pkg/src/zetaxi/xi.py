"""The completed function beth(s) = Phi(s) * aleph(s) from the theta integral.

    beth(s) = 1 + 2 int_1^oo s(s-1) u^(-3/4) psi(u) cosh((s - 1/2) ln(u)/2) du
    Phi(s)  = 2 pi^(-s/2) Gamma(s/2 + 1) (s - 1)

With s = a + ib and L = ln(u)/2 the kernel s(s-1) cosh((s-1/2)L) splits as
R + iI, where

    R = A cos(bL) + B sin(bL),   A = (a(a-1) - b^2) cosh((a-1/2)L),
                                 B = -b(2a-1) sinh((a-1/2)L),
    I = U cos(bL) + V sin(bL),   U = b(2a-1) cosh((a-1/2)L),
                                 V = (a(a-1) - b^2) sinh((a-1/2)L).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .numerics import (
    LOG_PI,
    QuadratureConfig,
    QuadratureWarning,
    as_complex,
    improper_integral,
    log_gamma,
    rgamma,
)
from .theta import psi_array

__all__ = [
    "IntegrandDecomposition",
    "BethResult",
    "decompose",
    "kernel_R",
    "kernel_I",
    "R_amplitude_phase",
    "I_amplitude_phase",
    "theta_weight",
    "phi_factor",
    "evaluate_beth",
    "beth",
    "aleph_from_beth",
    "functional_residual",
]

# psi(u) <= PSI_BOUND * exp(-pi u) for u >= 1
PSI_BOUND = 1.0 + 1e-4


@dataclass(frozen=True)
class IntegrandDecomposition:
    A: float
    B: float
    U: float
    V: float
    phase: float  # b * ln(u) / 2

    @property
    def R(self) -> float:
        return self.A * math.cos(self.phase) + self.B * math.sin(self.phase)

    @property
    def I(self) -> float:  # noqa: E743
        return self.V * math.sin(self.phase) + self.U * math.cos(self.phase)


def _coefficients(a, b, u):
    half_log = 0.5 * np.log(u)
    ch = np.cosh((a - 0.5) * half_log)
    sh = np.sinh((a - 0.5) * half_log)
    quad = a * (a - 1.0) - b * b
    lin = b * (2.0 * a - 1.0)
    return quad * ch, -lin * sh, lin * ch, quad * sh, b * half_log


def decompose(a: float, b: float, u: float) -> IntegrandDecomposition:
    """Amplitude coefficients of the real/imaginary kernel at ``(a, b, u)``."""
    if not u >= 1.0:
        raise ValueError("decomposition domain: u must be >= 1")
    A, B, U, V, phase = _coefficients(float(a), float(b), float(u))
    return IntegrandDecomposition(float(A), float(B), float(U), float(V), float(phase))


def kernel_R(a: float, b: float, u):
    """Re[s(s-1) cosh((s-1/2) ln(u)/2)] for s = a + ib (vectorised in u)."""
    A, B, _, _, phase = _coefficients(a, b, u)
    return A * np.cos(phase) + B * np.sin(phase)


def kernel_I(a: float, b: float, u):
    """Im[s(s-1) cosh((s-1/2) ln(u)/2)] for s = a + ib (vectorised in u)."""
    _, _, U, V, phase = _coefficients(a, b, u)
    return V * np.sin(phase) + U * np.cos(phase)


def _amplitude_phase(P: float, Q: float, phase: float) -> float:
    # sqrt(P^2+Q^2) sin(phase + pi/2 Sign(P) - arctan(Q/P)); needs P != 0
    if P == 0.0:
        raise ValueError("amplitude-phase form undefined for a zero leading coefficient")
    return math.hypot(P, Q) * math.sin(
        phase + 0.5 * math.pi * math.copysign(1.0, P) - math.atan(Q / P)
    )


def R_amplitude_phase(a: float, b: float, u: float) -> float:
    d = decompose(a, b, u)
    return _amplitude_phase(d.A, d.B, d.phase)


def I_amplitude_phase(a: float, b: float, u: float) -> float:
    d = decompose(a, b, u)
    return _amplitude_phase(d.U, d.V, d.phase)


def theta_weight(u):
    """u^(-3/4) psi(u), the common weight of every critical-line integral."""
    u = np.asarray(u, dtype=float)
    return u**-0.75 * psi_array(u)


def phi_factor(s) -> complex:
    """Phi(s) = 2 pi^(-s/2) Gamma(s/2 + 1) (s - 1)."""
    s = as_complex(s)
    half = 0.5 * s + 1.0
    if half.imag == 0.0 and half.real <= 0.0 and half.real == math.floor(half.real):
        raise ValueError("phi pole (trivial-zero abscissa)")
    return 2.0 * (s - 1.0) * cmath.exp(log_gamma(half) - 0.5 * s * LOG_PI)


class BethResult(NamedTuple):
    value: complex
    err_est: float
    converged: bool


def evaluate_beth(s, cfg: Optional[QuadratureConfig] = None) -> BethResult:
    """beth(s) from two real quadratures (R and I kernels).

    ``cfg.tol`` is the absolute error target for beth itself, so each
    integral runs at half of it.
    """
    s = as_complex(s)
    cfg = cfg or QuadratureConfig()
    a, b = s.real, s.imag
    sub = cfg.with_tol(0.5 * cfg.tol)
    # |R|, |I| <= |s(s-1)| u^(|a-1/2|/2), tail bound applies to 2 * integral
    scale = 2.0 * PSI_BOUND * abs(s * (s - 1.0))
    power = 0.5 * abs(a - 0.5) - 0.75

    re = improper_integral(
        lambda u: theta_weight(u) * kernel_R(a, b, u), sub, scale=scale, power=power, warn=False
    )
    im = improper_integral(
        lambda u: theta_weight(u) * kernel_I(a, b, u), sub, scale=scale, power=power, warn=False
    )
    value = complex(1.0 + 2.0 * re.value, 2.0 * im.value)
    err = 2.0 * (re.err_est + im.err_est)
    return BethResult(value, err, re.converged and im.converged)


def beth(s, cfg: Optional[QuadratureConfig] = None) -> complex:
    """The entire completed function beth(s); warns on quadrature failure."""
    res = evaluate_beth(s, cfg)
    if not res.converged:
        warnings.warn(
            f"beth({complex(s)}) quadrature unconverged (err_est={res.err_est:.3g})",
            QuadratureWarning,
            stacklevel=2,
        )
    return res.value


def aleph_from_beth(s, cfg: Optional[QuadratureConfig] = None) -> complex:
    """aleph(s) = beth(s) pi^(s/2) / (2 Gamma(s/2 + 1) (s - 1)).

    Uses 1/Gamma, so s = -2, -4, ... give exactly 0.
    """
    s = as_complex(s)
    if s == 1.0:
        raise ValueError("pole of the continuation at s = 1")
    rg = rgamma(0.5 * s + 1.0)
    if rg == 0:
        return 0j
    return beth(s, cfg) * cmath.exp(0.5 * s * LOG_PI) * rg / (2.0 * (s - 1.0))


def functional_residual(s, cfg: Optional[QuadratureConfig] = None) -> float:
    """|beth(s) - beth(1 - s)|."""
    s = as_complex(s)
    return abs(beth(s, cfg) - beth(1.0 - s, cfg))

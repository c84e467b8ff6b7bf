"""Zeros: critical-line scanning, trivial zeros and the symmetric
Weierstrass-factor experiment."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .numerics import QuadratureConfig, as_complex, improper_integral
from .xi import PSI_BOUND, aleph_from_beth, beth, theta_weight
from .zeta_em import aleph_em

__all__ = [
    "B_LIMIT",
    "Zero",
    "ScanConfig",
    "ZeroResiduals",
    "TABLE_ZEROS",
    "TABLE_SCAN",
    "critical_g",
    "scan_zeros",
    "bisect_root",
    "canonical_cell",
    "verify_zero",
    "trivial_zeros",
    "weierstrass_factor",
    "truncated_product",
    "perturbation_residual",
]

B_LIMIT = 200.0

# imaginary parts printed in the published table (five decimals)
TABLE_ZEROS = (14.13472, 21.02203, 25.01085, 30.42487, 32.93506)


@dataclass(frozen=True)
class ScanConfig:
    b_min: float = 10.0
    b_max: float = 35.0
    step: float = 0.25
    refine_tol: float = 1e-7

    def __post_init__(self):
        vals = (self.b_min, self.b_max, self.step, self.refine_tol)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("scan parameters must be finite")
        if self.b_min < 0.0:
            raise ValueError("b_min must be >= 0")
        if not self.b_min < self.b_max:
            raise ValueError("b_min must be < b_max")
        if not 0.0 < self.step <= 0.5:
            raise ValueError("step must lie in (0, 0.5]")
        if self.refine_tol <= 0.0:
            raise ValueError("refine_tol must be > 0")
        if self.b_max > B_LIMIT:
            raise ValueError(f"b_max must be <= {B_LIMIT:g}")

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.b_max - self.b_min) / self.step + 1e-9))
        pts = self.b_min + self.step * np.arange(n + 1)
        if pts[-1] < self.b_max:
            pts = np.append(pts, self.b_max)
        return pts


TABLE_SCAN = ScanConfig(10.0, 35.0, 0.25, 1e-7)


@dataclass(frozen=True)
class Zero:
    b: float
    residual_beth: float
    residual_aleph: float
    bracket: Tuple[float, float]
    a: float = 0.5

    @property
    def s(self) -> complex:
        return complex(self.a, self.b)


class ZeroResiduals(NamedTuple):
    residual_beth: float
    residual_aleph: float


def critical_g(b: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """g(b) = 2 (1/4 + b^2) int_1^oo u^(-3/4) psi(u) cos(b ln(u)/2) du - 1.

    On the critical line beth(1/2 + ib) = -g(b), so zeros of g are the
    imaginary parts of critical zeros.
    """
    b = float(b)
    if not abs(b) <= B_LIMIT:
        raise ValueError(f"|b| must be <= {B_LIMIT:g}")
    cfg = cfg or QuadratureConfig()
    amp = 2.0 * (0.25 + b * b)
    sub = cfg.with_tol(cfg.tol / amp)
    res = improper_integral(
        lambda u: theta_weight(u) * np.cos(0.5 * b * np.log(u)),
        sub,
        scale=PSI_BOUND,
        power=-0.75,
    )
    # amp * value is close to 1 near a zero; rounding the product first
    # would quantise g to ulp(1) and blur the root by ~1e-8 at b ~ 30
    exact_amp = 2 * (Fraction(1, 4) + Fraction(b) ** 2)
    return float(exact_amp * Fraction(res.value) - 1)


def bisect_root(f, lo: float, hi: float, flo: float, fhi: float, tol: float):
    """Plain bisection on a sign-changing bracket; returns the final bracket."""
    if flo == 0.0:
        return lo, lo
    if fhi == 0.0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket does not change sign")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


CELL = 0.125


def canonical_cell(f, lo: float, hi: float, flo: float, fhi: float, cell: float = CELL):
    """Move a sign-changing bracket onto the fixed lattice ``cell * Z``.

    Near a root g is only known to a few ulps, so bisection from different
    starting brackets can settle on different rounding-level sign flips.
    Starting every refinement from a lattice cell (with exact dyadic
    midpoints) makes the result independent of the scan grid. Falls back to
    the given bracket if no lattice cell shows the sign change.
    """
    n0 = math.floor(lo / cell)
    n1 = math.ceil(hi / cell)
    known = {lo: flo, hi: fhi}
    pts = [n * cell for n in range(n0, n1 + 1)]
    vals = [known[x] if x in known else f(x) for x in pts]
    for i in range(len(pts) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            return pts[i], pts[i], v0, v0
        if v1 != 0.0 and (v0 > 0) != (v1 > 0):
            return pts[i], pts[i + 1], v0, v1
    if vals[-1] == 0.0:
        return pts[-1], pts[-1], 0.0, 0.0
    return lo, hi, flo, fhi


def _map(fn, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def scan_zeros(
    scan: ScanConfig = TABLE_SCAN,
    cfg: Optional[QuadratureConfig] = None,
    *,
    threads: int = 1,
) -> List[Zero]:
    """Sign-change scan of ``critical_g`` followed by bisection.

    Grid points are ``b_min + i*step`` (plus ``b_max``), so the result does
    not depend on the thread count. Brackets whose left end is an exact root
    and the right end of one interval are de-duplicated.
    """
    cfg = cfg or QuadratureConfig()
    grid = scan.grid()
    g_vals = _map(lambda b: critical_g(float(b), cfg), list(grid), threads)

    brackets = []
    for i in range(len(grid) - 1):
        g0, g1 = g_vals[i], g_vals[i + 1]
        if g0 == 0.0:
            if not brackets or brackets[-1][0] != grid[i]:
                brackets.append((float(grid[i]), float(grid[i]), g0, g0))
        elif g1 != 0.0 and (g0 > 0) != (g1 > 0):
            brackets.append((float(grid[i]), float(grid[i + 1]), g0, g1))
    if g_vals[-1] == 0.0 and (not brackets or brackets[-1][0] != grid[-1]):
        brackets.append((float(grid[-1]), float(grid[-1]), 0.0, 0.0))

    def g(b):
        return critical_g(b, cfg)

    def refine(br):
        lo, hi, flo, fhi = br
        if lo == hi:
            return lo, hi
        lo, hi, flo, fhi = canonical_cell(g, lo, hi, flo, fhi)
        return bisect_root(g, lo, hi, flo, fhi, scan.refine_tol)

    finals = _map(refine, brackets, threads)

    def build(bracket):
        lo, hi = bracket
        b = 0.5 * (lo + hi)
        res = verify_zero(b, cfg)
        return Zero(b, res.residual_beth, res.residual_aleph, (lo, hi))

    return _map(build, finals, threads)


def verify_zero(b: float, cfg: Optional[QuadratureConfig] = None) -> ZeroResiduals:
    """|beth| and |aleph| (Euler-Maclaurin) at 1/2 + ib, unthresholded."""
    b = float(b)
    if not abs(b) <= B_LIMIT:
        raise ValueError(f"|b| must be <= {B_LIMIT:g}")
    s = complex(0.5, b)
    return ZeroResiduals(abs(beth(s, cfg)), abs(aleph_em(s)))


TRIVIAL_EM_LIMIT = 1e-8


def trivial_zeros(k_max: int, cfg: Optional[QuadratureConfig] = None) -> List[float]:
    """[-2, -4, ..., -2(k_max + 1)], each confirmed on both evaluation paths."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    out = []
    for k in range(k_max + 1):
        s = -2.0 * (k + 1)
        em = abs(aleph_em(s))
        if em >= TRIVIAL_EM_LIMIT:
            raise RuntimeError(f"|aleph_em({s:g})| = {em:.3g} is not below {TRIVIAL_EM_LIMIT:g}")
        if aleph_from_beth(s, cfg) != 0:
            raise RuntimeError(f"aleph_from_beth({s:g}) is not exactly zero")
        out.append(s)
    return out


def weierstrass_factor(z, zk) -> complex:
    """1 - z(1-z)/|zk|^2, the product of the factors for zk and conj(zk)
    when Re zk = 1/2."""
    z = as_complex(z)
    zk = as_complex(zk)
    m2 = zk.real * zk.real + zk.imag * zk.imag
    if m2 == 0.0:
        raise ValueError("zero modulus")
    return 1.0 - z * (1.0 - z) / m2


def _imag_part(zero) -> float:
    return float(zero.b) if hasattr(zero, "b") else float(zero)


def truncated_product(z, zeros: Iterable, K: int) -> complex:
    """Product of the first K symmetric factors over critical zeros
    1/2 + i b_k (``zeros`` holds Zero objects or bare b values)."""
    zeros = list(zeros)
    if not 0 <= K <= len(zeros):
        raise ValueError("K must satisfy 0 <= K <= len(zeros)")
    z = as_complex(z)
    out = 1 + 0j
    for zero in zeros[:K]:
        out *= weierstrass_factor(z, complex(0.5, _imag_part(zero)))
    return out


def perturbation_residual(zk, eps: float, delta: float) -> float:
    """|y + conj-partner - 1| for y = zk + eps e^{i delta} and partner
    conj(zk) + eps e^{-i delta}; analytically 2 eps |cos delta|."""
    zk = as_complex(zk)
    if zk.real != 0.5:
        raise ValueError("base zero must be critical (Re zk = 1/2)")
    if not 0.0 <= eps < 0.5:
        raise ValueError("eps must satisfy 0 <= eps < 1/2")
    y = zk + eps * cmath.exp(1j * delta)
    y_partner = zk.conjugate() + eps * cmath.exp(-1j * delta)
    return abs(y + y_partner - 1.0)

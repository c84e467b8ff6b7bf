"""Bernoulli numbers, polynomials and their 1-periodic extensions.

Numbers are generated exactly (``fractions.Fraction``) from

    sum_{k=0}^{n} C(n+1, k) b_k = 0,   n >= 1,

with the convention b_1 = -1/2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Tuple

import numpy as np

__all__ = [
    "MAX_INDEX",
    "BernoulliTable",
    "bernoulli_table",
    "bernoulli_number",
    "bernoulli_float",
    "bernoulli_polynomial",
    "periodic_bernoulli",
    "bernoulli_sup",
]

MAX_INDEX = 64


class BernoulliTable:
    """Immutable table of b_0 .. b_max_index as exact rationals."""

    def __init__(self, max_index: int = MAX_INDEX):
        if max_index < 1:
            raise ValueError("max_index must be >= 1")
        values: List[Fraction] = [Fraction(1)]
        for n in range(1, max_index + 1):
            if n > 1 and n % 2 == 1:
                values.append(Fraction(0))
                continue
            acc = sum(comb(n + 1, k) * values[k] for k in range(n))
            values.append(-acc / (n + 1))
        self._values: Tuple[Fraction, ...] = tuple(values)
        self._floats: Tuple[float, ...] = tuple(
            v.numerator / v.denominator for v in values
        )
        self.max_index = max_index

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def _check(self, n: int) -> None:
        if n < 0:
            raise ValueError("Bernoulli index must be >= 0")
        if n > self.max_index:
            raise IndexError(f"table exhausted: n={n} > max_index={self.max_index}")

    def number(self, n: int) -> Fraction:
        self._check(n)
        return self._values[n]

    def as_float(self, n: int) -> float:
        # int/int true division is correctly rounded
        self._check(n)
        return self._floats[n]


@lru_cache(maxsize=None)
def bernoulli_table(max_index: int = MAX_INDEX) -> BernoulliTable:
    return BernoulliTable(max_index)


def bernoulli_number(n: int) -> Fraction:
    """Exact b_n = B_n(0)."""
    return bernoulli_table().number(n)


def bernoulli_float(n: int) -> float:
    return bernoulli_table().as_float(n)


@lru_cache(maxsize=None)
def _poly_coefficients(n: int) -> Tuple[float, ...]:
    # highest degree first: C(n, k) b_k multiplies x^(n-k)
    table = bernoulli_table()
    return tuple(float(comb(n, k) * table.number(k)) for k in range(n + 1))


@lru_cache(maxsize=None)
def _exact_coefficients(n: int) -> Tuple[Fraction, ...]:
    table = bernoulli_table()
    return tuple(comb(n, k) * table.number(k) for k in range(n + 1))


def bernoulli_polynomial(n: int, x):
    """B_n(x) = sum_k C(n, k) b_k x^(n-k), evaluated by Horner's rule.

    A scalar ``x`` is converted exactly to a rational and the Horner sweep
    runs in exact arithmetic, so the result is the correctly rounded value
    even for large ``n``. Arrays use a binary64 sweep, adequate for the
    small ``n`` used by quadrature kernels.
    """
    bernoulli_table()._check(n)
    if isinstance(x, np.ndarray):
        acc = np.zeros_like(x, dtype=float)
        for c in _poly_coefficients(n):
            acc = acc * x + c
        return acc
    xq = Fraction(float(x))
    acc = Fraction(0)
    for c in _exact_coefficients(n):
        acc = acc * xq + c
    return acc.numerator / acc.denominator


def periodic_bernoulli(n: int, x):
    """B*_n(x) = B_n(x - floor(x)), the 1-periodic extension."""
    return bernoulli_polynomial(n, x - np.floor(x))


@lru_cache(maxsize=None)
def bernoulli_sup(n: int) -> float:
    """max |B_n(x)| over [0, 1].

    Extrema sit at the endpoints or at roots of B_n' = n B_{n-1}.
    """
    if n == 0:
        return 1.0
    candidates = [0.0, 1.0]
    roots = np.roots(_poly_coefficients(n - 1))
    for r in roots:
        if abs(r.imag) < 1e-9 and -1e-12 <= r.real <= 1.0 + 1e-12:
            candidates.append(min(max(r.real, 0.0), 1.0))
    return max(abs(float(bernoulli_polynomial(n, c))) for c in candidates)

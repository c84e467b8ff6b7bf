from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetaxi.bernoulli import (
    MAX_INDEX,
    BernoulliTable,
    bernoulli_float,
    bernoulli_number,
    bernoulli_polynomial,
    bernoulli_sup,
    periodic_bernoulli,
)


def test_b0():
    assert bernoulli_number(0) == 1


def test_b2():
    # by hand: C(3,0) b0 + C(3,1) b1 + C(3,2) b2 = 1 - 3/2 + 3 b2 = 0
    assert bernoulli_number(2) == Fraction(1, 6)


def test_b3_vanishes():
    assert bernoulli_number(3) == 0


def test_b1_convention():
    assert bernoulli_number(1) == Fraction(-1, 2)


@pytest.mark.parametrize("n", range(0, MAX_INDEX + 1))
def test_matches_mpmath_bernfrac(n):
    p, q = mpmath.bernfrac(n)
    assert bernoulli_number(n) == Fraction(int(p), int(q))


def test_defining_recurrence_exact():
    for n in range(1, MAX_INDEX):
        assert sum(comb(n + 1, k) * bernoulli_number(k) for k in range(n + 1)) == 0


def test_odd_entries_zero():
    for n in range(3, MAX_INDEX + 1, 2):
        assert bernoulli_number(n) == 0


def test_table_exhausted():
    with pytest.raises(IndexError, match="table exhausted"):
        bernoulli_number(MAX_INDEX + 1)
    with pytest.raises(IndexError):
        bernoulli_polynomial(MAX_INDEX + 1, 0.3)


def test_float_view_correctly_rounded():
    for n in range(0, MAX_INDEX + 1, 2):
        b = bernoulli_number(n)
        assert bernoulli_float(n) == b.numerator / b.denominator


def test_custom_table_size():
    t = BernoulliTable(10)
    assert len(t) == 11
    assert t.number(10) == Fraction(5, 66)
    with pytest.raises(IndexError):
        t.number(11)


def test_polynomial_b1_at_zero():
    assert bernoulli_polynomial(1, 0.0) == -0.5


def test_polynomial_b2_at_zero():
    assert bernoulli_polynomial(2, 0.0) == pytest.approx(1.0 / 6.0, abs=1e-15)


def test_polynomial_b3_at_half():
    # x^3 - 3/2 x^2 + 1/2 x at x = 1/2
    x = 0.5
    assert x**3 - 1.5 * x**2 + 0.5 * x == 0.0
    assert bernoulli_polynomial(3, 0.5) == 0.0


def test_polynomial_endpoints_agree():
    for n in range(2, MAX_INDEX + 1):
        assert bernoulli_polynomial(n, 1.0) - bernoulli_polynomial(n, 0.0) == 0.0


def test_polynomial_vs_mpmath():
    for n in (1, 4, 7, 12, 17, 30):
        for x in (0.0, 0.1, 0.37, 0.5, 0.9):
            assert bernoulli_polynomial(n, x) == pytest.approx(float(mpmath.bernpoly(n, x)), rel=1e-14, abs=1e-300)


def test_array_path_matches_scalar():
    import numpy as np

    x = np.linspace(0, 1, 11)
    arr = bernoulli_polynomial(9, x)
    for xi, yi in zip(x, arr):
        assert yi == pytest.approx(bernoulli_polynomial(9, float(xi)), abs=1e-13)


def test_periodic_examples():
    assert periodic_bernoulli(3, 2.5) == 0.0
    assert periodic_bernoulli(5, 7.0) == 0.0


@given(st.integers(-(2**24), 2**24), st.integers(0, 18))
def test_periodic_is_one_periodic(m, n):
    # dyadic x keeps x + 1 exact in binary64
    x = m / 2**20
    assert periodic_bernoulli(n, x + 1.0) == periodic_bernoulli(n, x)


def test_sup_of_b3():
    assert bernoulli_sup(3) == pytest.approx(3**0.5 / 36, rel=1e-12)

import cmath
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetaxi.numerics import QuadratureConfig
from zetaxi.xi import beth
from zetaxi.zeros import (
    TABLE_SCAN,
    TABLE_ZEROS,
    ScanConfig,
    Zero,
    canonical_cell,
    critical_g,
    perturbation_residual,
    scan_zeros,
    trivial_zeros,
    truncated_product,
    verify_zero,
    weierstrass_factor,
)
from zetaxi.zeta_em import aleph_em

# mpmath.zetazero(k).imag, k = 1..5
KNOWN_ZEROS = (14.134725141734694, 21.022039638771555, 25.010857580145689, 30.424876125859513, 32.935061587739190)
BETH_HALF = 0.994241556376628


@pytest.fixture(scope="module")
def table_scan():
    return scan_zeros(TABLE_SCAN)


# -------------------------------------------------------------- critical_g


def test_g_at_zero():
    assert abs(critical_g(0.0) + BETH_HALF) < 1e-6


def test_g_at_first_zero():
    assert abs(critical_g(14.134725)) < 1e-6


def test_g_sign_change_around_first_zero():
    assert (critical_g(14.0) > 0) != (critical_g(15.0) > 0)


def test_g_domain():
    with pytest.raises(ValueError):
        critical_g(250.0)


@pytest.mark.parametrize("b", [0.0, 5.0, 14.0, 21.0, 30.0])
def test_g_is_minus_real_beth(b):
    assert abs(critical_g(b) + beth(complex(0.5, b)).real) < 1e-9


@pytest.mark.parametrize("b", [0.0, 5.0, 14.0, 21.0, 30.0])
def test_beth_real_on_critical_line(b):
    assert abs(beth(complex(0.5, b)).imag) < 1e-10


# -------------------------------------------------------------------- scan


def test_scan_reproduces_table(table_scan):
    assert len(table_scan) == 5
    for z, printed in zip(table_scan, TABLE_ZEROS):
        assert abs(z.b - printed) < 5e-5


def test_scan_matches_known_zeros(table_scan):
    for z, ref in zip(table_scan, KNOWN_ZEROS):
        assert abs(z.b - ref) < 1e-6


def test_zero_invariants(table_scan):
    for z in table_scan:
        assert z.a == 0.5
        assert z.s == complex(0.5, z.b)
        lo, hi = z.bracket
        assert lo <= z.b <= hi
        assert hi - lo <= TABLE_SCAN.refine_tol
        assert z.residual_beth < 1e-5
        assert z.residual_aleph < 1e-4


def test_residual_within_propagated_bound(table_scan):
    cfg = QuadratureConfig()
    for z in table_scan:
        lo, hi = z.bracket
        bound = abs(critical_g(hi) - critical_g(lo)) + cfg.tol
        assert z.residual_beth <= bound + 1e-12


def test_scan_strictly_increasing(table_scan):
    bs = [z.b for z in table_scan]
    assert all(x < y for x, y in zip(bs, bs[1:]))


def test_scan_below_first_zero_is_empty():
    assert scan_zeros(ScanConfig(0.0, 10.0, 0.25, 1e-7)) == []


def test_scan_step_independence(table_scan):
    fine = scan_zeros(ScanConfig(10.0, 35.0, 0.1, 1e-7))
    assert len(fine) == len(table_scan)
    for x, y in zip(fine, table_scan):
        assert abs(x.b - y.b) <= 1e-7


def test_canonical_cell_makes_refinement_grid_independent(table_scan):
    for step in (0.1, 0.3, 0.5):
        other = scan_zeros(ScanConfig(10.0, 35.0, step, 1e-7))
        assert [z.b for z in other] == [z.b for z in table_scan]


def test_canonical_cell():
    f = lambda b: b - 1.3  # noqa: E731
    assert canonical_cell(f, 1.2, 1.45, f(1.2), f(1.45)) == (1.25, 1.375, f(1.25), f(1.375))
    assert canonical_cell(f, 1.2, 1.45, f(1.2), f(1.45), cell=0.05)[:2] != (1.2, 1.45)


def test_scan_partition_independence(table_scan):
    left = scan_zeros(ScanConfig(10.0, 20.0, 0.25, 1e-7))
    right = scan_zeros(ScanConfig(20.0, 35.0, 0.25, 1e-7))
    assert [z.b for z in left + right] == [z.b for z in table_scan]


def test_scan_thread_count_independence(table_scan):
    assert scan_zeros(TABLE_SCAN, threads=4) == table_scan


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(b_min=-1.0),
        dict(b_min=20.0, b_max=10.0),
        dict(step=0.0),
        dict(step=0.75),
        dict(refine_tol=0.0),
        dict(b_max=500.0),
        dict(b_max=math.nan),
    ],
)
def test_scan_config_invariants(kwargs):
    with pytest.raises(ValueError):
        ScanConfig(**kwargs)


# ------------------------------------------------------------- verify_zero


def test_verify_first_zero():
    res = verify_zero(14.134725)
    assert res.residual_beth < 1e-6
    assert res.residual_aleph < 1e-4


def test_verify_non_zero():
    # |Phi(1/2+15i) zeta(1/2+15i)| from mpmath at 30 digits
    res = verify_zero(15.0)
    assert res.residual_beth > 1e-3
    assert res.residual_beth == pytest.approx(0.00141139591764309, rel=1e-9)


def test_verify_at_real_axis():
    assert verify_zero(0.0).residual_aleph == pytest.approx(1.46035, abs=1e-5)


# ---------------------------------------------------------- trivial zeros


def test_trivial_zeros_k0():
    assert trivial_zeros(0) == [-2.0]


def test_trivial_zeros_k2():
    assert trivial_zeros(2) == [-2.0, -4.0, -6.0]


def test_aleph_minus_four():
    assert abs(aleph_em(-4)) < 1e-8


def test_trivial_zeros_negative_k():
    with pytest.raises(ValueError):
        trivial_zeros(-1)


# ------------------------------------------------------ Weierstrass factor


def test_factor_symmetric_exact_for_dyadic_z():
    # dyadic parts keep 1 - (1 - z) == z, so both sides see the same z(1-z)
    rng = random.Random(1)
    for _ in range(50):
        z = complex(rng.randint(-5 * 2**20, 5 * 2**20), rng.randint(-40 * 2**20, 40 * 2**20)) / 2**20
        zk = complex(0.5, rng.uniform(10, 40))
        assert weierstrass_factor(z, zk) == weierstrass_factor(1 - z, zk)


def test_factor_symmetric_to_rounding():
    rng = random.Random(1)
    for _ in range(50):
        z = complex(rng.uniform(-5, 5), rng.uniform(-40, 40))
        zk = complex(0.5, rng.uniform(10, 40))
        scale = 1 + abs(z * (1 - z)) / abs(zk) ** 2
        assert abs(weierstrass_factor(z, zk) - weierstrass_factor(1 - z, zk)) < 8 * 2**-52 * scale


def test_factor_vanishes_at_its_zero():
    zk = complex(0.5, 14.134725)
    assert abs(weierstrass_factor(zk, zk)) < 1e-6


def test_factor_at_origin():
    assert weierstrass_factor(0, complex(0.5, 14.134725)) == 1


def test_factor_zero_modulus():
    with pytest.raises(ValueError, match="zero modulus"):
        weierstrass_factor(1 + 1j, 0)


def test_product_empty():
    assert truncated_product(0.3 + 2j, KNOWN_ZEROS, 0) == 1


def test_product_at_first_zero(table_scan):
    assert abs(truncated_product(complex(0.5, table_scan[0].b), table_scan, 5)) < 1e-5


def test_product_too_many_factors():
    with pytest.raises(ValueError):
        truncated_product(0.3, KNOWN_ZEROS, 6)


def test_product_symmetry():
    rng = random.Random(2)
    for _ in range(100):
        z = complex(rng.uniform(-3, 4), rng.uniform(-40, 40))
        p, q = truncated_product(z, KNOWN_ZEROS, 5), truncated_product(1 - z, KNOWN_ZEROS, 5)
        scale = math.prod(1 + abs(z * (1 - z)) / abs(complex(0.5, b)) ** 2 for b in KNOWN_ZEROS)
        assert abs(p - q) < 64 * 2**-52 * scale


def test_product_accepts_zero_objects():
    zeros = [Zero(b, 0.0, 0.0, (b, b)) for b in KNOWN_ZEROS]
    z = 0.2 + 3j
    assert truncated_product(z, zeros, 5) == truncated_product(z, KNOWN_ZEROS, 5)


# ------------------------------------------------------------ perturbation


def test_perturbation_unperturbed():
    assert perturbation_residual(complex(0.5, 14.134725), 0.0, 1.0) == 0.0


def test_perturbation_delta_zero():
    assert abs(perturbation_residual(complex(0.5, 14.134725), 0.1, 0.0) - 0.2) < 1e-15


def test_perturbation_delta_right_angle():
    assert abs(perturbation_residual(complex(0.5, 14.134725), 0.1, math.pi / 2)) < 1e-15


def test_perturbation_domain():
    with pytest.raises(ValueError, match="base zero must be critical"):
        perturbation_residual(complex(0.4, 14.0), 0.1, 0.0)
    with pytest.raises(ValueError):
        perturbation_residual(complex(0.5, 14.0), 0.5, 0.0)


@given(st.floats(1, 200), st.floats(0, 0.499), st.floats(-10, 10))
def test_perturbation_closed_form(b, eps, delta):
    r = perturbation_residual(complex(0.5, b), eps, delta)
    assert abs(r - 2 * eps * abs(math.cos(delta))) < 1e-14


def test_perturbation_matches_complex_exponentials():
    zk = complex(0.5, 21.022)
    y = zk + 0.3 * cmath.exp(0.7j)
    yb = zk.conjugate() + 0.3 * cmath.exp(-0.7j)
    assert perturbation_residual(zk, 0.3, 0.7) == abs(y + yb - 1)

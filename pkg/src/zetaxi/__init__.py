"""Two evaluation paths for the analytically continued Riemann zeta function
(Euler-Maclaurin and the theta-integral completed function) and a
critical-line zero finder built on them."""

from .bernoulli import bernoulli_number, bernoulli_polynomial, periodic_bernoulli
from .numerics import QuadratureConfig, complex_gamma, improper_integral, log_gamma, romberg
from .theta import psi, psi_functional_residual, theta_full
from .xi import aleph_from_beth, beth, decompose, functional_residual, phi_factor
from .zeros import (
    ScanConfig,
    Zero,
    critical_g,
    perturbation_residual,
    scan_zeros,
    trivial_zeros,
    truncated_product,
    verify_zero,
    weierstrass_factor,
)
from .zeta_em import EmParams, aleph_em, sigma_M_direct, zeta_dirichlet

__version__ = "0.1.0"

__all__ = [
    "EmParams",
    "QuadratureConfig",
    "ScanConfig",
    "Zero",
    "aleph_em",
    "aleph_from_beth",
    "bernoulli_number",
    "bernoulli_polynomial",
    "beth",
    "complex_gamma",
    "critical_g",
    "decompose",
    "functional_residual",
    "improper_integral",
    "log_gamma",
    "periodic_bernoulli",
    "perturbation_residual",
    "phi_factor",
    "psi",
    "psi_functional_residual",
    "romberg",
    "scan_zeros",
    "sigma_M_direct",
    "theta_full",
    "trivial_zeros",
    "truncated_product",
    "verify_zero",
    "weierstrass_factor",
    "zeta_dirichlet",
]

"""Special functions, parabolic cylinder functions and quadrature."""

from .specfun import (
    gamma,
    rgamma,
    erfc,
    kummer_phi,
    gauss_2f1,
    gauss_2f1_near_unity,
    incomplete_beta,
    elliptic_K,
    legendre_P,
    legendre_P_equal,
    bessel_I,
    bessel_K,
)
from .pcf import pcf_D, pcf_sum_residuals
from .quadrature import integrate, integrate_split

__all__ = [
    # Special functions
    'gamma',
    'rgamma',
    'erfc',
    'kummer_phi',
    'gauss_2f1',
    'gauss_2f1_near_unity',
    'incomplete_beta',
    'elliptic_K',
    'legendre_P',
    'legendre_P_equal',
    'bessel_I',
    'bessel_K',
    # Parabolic cylinder functions
    'pcf_D',
    'pcf_sum_residuals',
    # Quadrature
    'integrate',
    'integrate_split'
]

"""Scalar special functions used by every integrand and coefficient.

Thin validating wrappers over :mod:`src.algorithms.kernels`. Values that can
lose accuracy next to a branch point accept the exact complement of their
argument (``one_minus_z`` and friends) so callers never form ``1 - z``
themselves.

Elliptic integrals use the PARAMETER convention: ``elliptic_K(m)`` is
``(pi/2) F(1/2, 1/2; 1; m)``, not a function of the modulus k = sqrt(m).
"""

import logging
import math
from typing import Optional, Tuple

from src.config.constants import KUMMER_MAX_ARG
from src.config.settings import Settings
from src.models import (
    SeriesResult,
    HypParams,
    ParameterError,
    PoleError,
    DomainError,
    DivergenceError,
    ConvergenceError,
)
from . import kernels
from .kernels import (
    STATUS_OK,
    STATUS_NO_CONVERGENCE,
    STATUS_POLE,
    STATUS_DIVERGENT,
    STATUS_DOMAIN,
)

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS = Settings()


def _raise_for_status(status: int, name: str, value: float, err: float) -> None:
    """Translate a kernel status code into an exception."""
    if status == STATUS_OK:
        return
    if status == STATUS_POLE:
        raise PoleError(f"{name}: parameter on a pole")
    if status == STATUS_DIVERGENT:
        raise DivergenceError(f"{name}: series diverges at unit argument")
    if status == STATUS_DOMAIN:
        raise DomainError(f"{name}: argument outside domain")
    if status == STATUS_NO_CONVERGENCE:
        raise ConvergenceError(f"{name}: term budget exhausted", value, err)
    raise ParameterError(f"{name}: unknown kernel status {status}")


def gamma(x: float) -> float:
    """Gamma function.

    Raises:
        PoleError: At non-positive integers
        DomainError: When the value overflows
    """
    if kernels.is_nonpositive_integer(x):
        raise PoleError(f"gamma: pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError as e:
        raise DomainError(f"gamma({x}) overflows") from e


def rgamma(x: float) -> float:
    """Reciprocal gamma; exactly 0 at non-positive integers."""
    return kernels.rgamma(float(x))


def digamma(x: float) -> float:
    """Digamma function psi(x)."""
    if kernels.is_nonpositive_integer(x):
        raise PoleError(f"digamma: pole at {x}")
    return kernels.digamma(float(x))


def beta(a: float, b: float) -> float:
    """Complete beta function B(a, b) for a, b > 0."""
    if a <= 0 or b <= 0:
        raise DomainError(f"beta: need a, b > 0, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def erfc(x: float) -> float:
    """Complementary error function."""
    return math.erfc(x)


def kummer_phi(
        a: float,
        b: float,
        z: float,
        settings: Optional[Settings] = None,
        max_terms: Optional[int] = None
) -> SeriesResult:
    """Kummer's function Phi(a; b; z).

    Negative z is evaluated through Phi(a;b;z) = e^z Phi(b-a;b;-z).

    Raises:
        PoleError: If b is a non-positive integer
        DomainError: If |z| exceeds the configured range
        ConvergenceError: If the term budget is exhausted
    """
    settings = settings or DEFAULT_SETTINGS
    if abs(z) > KUMMER_MAX_ARG:
        raise DomainError(f"kummer_phi: |z| = {abs(z)} above {KUMMER_MAX_ARG}")
    budget = max_terms or settings.series_max_terms
    value, err, terms, status = kernels.kummer(
        float(a), float(b), float(z), settings.series_tol, budget
    )
    _raise_for_status(status, "kummer_phi", value, err)
    return SeriesResult(value, err, terms, True)


def f21(
        a: float,
        b: float,
        c: float,
        z: float,
        one_minus_z: Optional[float] = None,
        settings: Optional[Settings] = None
) -> Tuple[float, float]:
    """Value and error estimate of F(a, b; c; z).

    Integrands call this directly; :func:`gauss_2f1` wraps it.
    """
    settings = settings or DEFAULT_SETTINGS
    omz = 1.0 - z if one_minus_z is None else one_minus_z
    value, err, _, status = kernels.hyp2f1(
        float(a), float(b), float(c), float(z), float(omz),
        settings.series_tol, settings.series_max_terms
    )
    _raise_for_status(status, "gauss_2f1", value, err)
    return value, err


def gauss_2f1(
        p: HypParams,
        one_minus_z: Optional[float] = None,
        settings: Optional[Settings] = None
) -> SeriesResult:
    """Gauss hypergeometric function F(a, b; c; z) for z <= 1.

    Direct series for |z| <= 1/2, Pfaff maps for z < -1/2, connection
    formulas around z = 1 (using ``one_minus_z`` when given) above 1/2.

    Raises:
        PoleError: If c is a non-positive integer
        DivergenceError: At z = 1 with c - a - b <= 0
        DomainError: For z > 1
        ConvergenceError: If the term budget is exhausted
    """
    settings = settings or DEFAULT_SETTINGS
    omz = 1.0 - p.z if one_minus_z is None else one_minus_z
    value, err, terms, status = kernels.hyp2f1(
        float(p.a), float(p.b), float(p.c), float(p.z), float(omz),
        settings.series_tol, settings.series_max_terms
    )
    _raise_for_status(status, "gauss_2f1", value, err)
    return SeriesResult(value, err, terms, True)


def gauss_2f1_near_unity(
        p: HypParams,
        one_minus_z: float,
        settings: Optional[Settings] = None
) -> SeriesResult:
    """F(a, b; c; 1 - one_minus_z) with accuracy governed by one_minus_z.

    ``p.z`` is ignored. Integer c - a - b uses the logarithmic connection
    formulas; terminating parameter sets are summed directly.
    """
    settings = settings or DEFAULT_SETTINGS
    if not 0.0 <= one_minus_z <= 1.0:
        raise DomainError(f"gauss_2f1_near_unity: one_minus_z = {one_minus_z} outside [0, 1]")
    a, b = (p.a, p.b) if p.a <= p.b else (p.b, p.a)
    value, err, terms, status = kernels.hyp2f1_near_one(
        float(a), float(b), float(p.c), float(one_minus_z),
        settings.series_tol, settings.series_max_terms
    )
    _raise_for_status(status, "gauss_2f1_near_unity", value, err)
    return SeriesResult(value, err, terms, True)


def incomplete_beta(
        z: float,
        a: float,
        b: float,
        one_minus_z: Optional[float] = None,
        settings: Optional[Settings] = None
) -> float:
    """Non-regularized incomplete beta B(z; a, b) = (z^a / a) F(a, 1-b; a+1; z).

    Raises:
        DomainError: Unless 0 <= z <= 1, a > 0, and (b > 0 or z < 1)
    """
    omz = 1.0 - z if one_minus_z is None else one_minus_z
    if not (0.0 <= z <= 1.0) or a <= 0:
        raise DomainError(f"incomplete_beta: need 0 <= z <= 1 and a > 0, got z={z}, a={a}")
    if b <= 0 and omz <= 0.0:
        raise DomainError("incomplete_beta: b <= 0 requires z < 1")
    if z == 0.0:
        return 0.0
    if z <= 0.5 or b <= 0:
        value, _ = f21(a, 1.0 - b, a + 1.0, z, one_minus_z=omz, settings=settings)
        return math.exp(a * math.log(z)) / a * value
    # reflect so the series argument stays small
    return beta(a, b) - incomplete_beta(omz, b, a, one_minus_z=z, settings=settings)


def elliptic_K(m: float, one_minus_m: Optional[float] = None) -> float:
    """Complete elliptic integral of the first kind, parameter convention.

    Raises:
        DomainError: For m >= 1
    """
    omm = 1.0 - m if one_minus_m is None else one_minus_m
    if m >= 1.0 or omm <= 0.0:
        raise DomainError(f"elliptic_K: m = {m} must be below 1")
    value, err, _, status = kernels.elliptic_k_agm(float(omm))
    _raise_for_status(status, "elliptic_K", value, err)
    return value


def legendre_P(
        deg: float,
        ord: float,
        x: float,
        one_minus_x: Optional[float] = None,
        one_plus_x: Optional[float] = None,
        settings: Optional[Settings] = None
) -> float:
    """Ferrers function of the first kind P_deg^ord(x) on (-1, 1).

    P = ((1+x)/(1-x))^{ord/2} F(-deg, deg+1; 1-ord; (1-x)/2) / Gamma(1-ord).

    When complements are given they decide the domain test, so x may round
    to +-1 while 1 -+ x stays positive.

    Raises:
        PoleError: If 1 - ord is a non-positive integer
        DomainError: Outside -1 < x < 1
    """
    omx = 1.0 - x if one_minus_x is None else one_minus_x
    opx = 1.0 + x if one_plus_x is None else one_plus_x
    inside = omx > 0.0 and opx > 0.0
    if one_minus_x is None and one_plus_x is None:
        inside = inside and -1.0 < x < 1.0
    if not inside:
        raise DomainError(f"legendre_P: x = {x} outside (-1, 1)")
    if kernels.is_nonpositive_integer(1.0 - ord):
        raise PoleError(f"legendre_P: Gamma(1 - {ord}) pole")
    value, _ = f21(-deg, deg + 1.0, 1.0 - ord, min(0.5 * omx, 1.0),
                   one_minus_z=0.5 * opx, settings=settings)
    return rgamma(1.0 - ord) * (opx / omx) ** (0.5 * ord) * value


def legendre_P_equal(nu: float, x: float, settings: Optional[Settings] = None) -> float:
    """P_nu^nu(x) through the incomplete beta reduction, nu < 0.

    Raises:
        DomainError: Unless nu < 0 and -1 < x < 1
    """
    if nu >= 0 or not (-1.0 < x < 1.0):
        raise DomainError(f"legendre_P_equal: need nu < 0 and |x| < 1, got ({nu}, {x})")
    omx = 1.0 - x
    opx = 1.0 + x
    coef = -nu * 2.0 ** (-nu) * rgamma(1.0 - nu)
    return coef * (omx * opx) ** (0.5 * nu) * incomplete_beta(
        0.5 * omx, -nu, -nu, one_minus_z=0.5 * opx, settings=settings
    )


def _bessel_i_any(order: float, z: float, settings: Settings) -> float:
    value, err, _, status = kernels.bessel_i_series(
        float(order), float(z), settings.series_tol, settings.series_max_terms
    )
    _raise_for_status(status, "bessel_I", value, err)
    return value


def bessel_I(ord: float, z: float, settings: Optional[Settings] = None) -> float:
    """Modified Bessel function of the first kind by its ascending series.

    Raises:
        DomainError: Unless z > 0 and ord > -1
    """
    if z <= 0 or ord <= -1:
        raise DomainError(f"bessel_I: need z > 0 and ord > -1, got ({ord}, {z})")
    return _bessel_i_any(ord, z, settings or DEFAULT_SETTINGS)


def bessel_K(ord: float, z: float, settings: Optional[Settings] = None) -> float:
    """Modified Bessel function of the second kind, non-integer order.

    K = (pi/2) (I_{-ord} - I_ord) / sin(ord pi).

    Raises:
        DomainError: Unless z > 0
        ParameterError: For integer order
    """
    if z <= 0:
        raise DomainError(f"bessel_K: need z > 0, got {z}")
    if ord == math.floor(ord):
        raise ParameterError(f"bessel_K: integer order {ord} not supported")
    settings = settings or DEFAULT_SETTINGS
    i_minus = _bessel_i_any(-ord, z, settings)
    i_plus = _bessel_i_any(ord, z, settings)
    return 0.5 * math.pi * (i_minus - i_plus) / math.sin(ord * math.pi)


def hyp2f1_quadratic_residual(
        a: float,
        b: float,
        z: float,
        settings: Optional[Settings] = None
) -> float:
    """F(a, b; a+b+1/2; z) - F(2a, 2b; a+b+1/2; (1 - sqrt(1-z))/2) for 0 <= z < 1."""
    if not 0.0 <= z < 1.0:
        raise DomainError(f"hyp2f1_quadratic_residual: z = {z} outside [0, 1)")
    c = a + b + 0.5
    root = math.sqrt(1.0 - z)
    lhs, _ = f21(a, b, c, z, settings=settings)
    rhs, _ = f21(2.0 * a, 2.0 * b, c, 0.5 * (1.0 - root),
                 one_minus_z=0.5 * (1.0 + root), settings=settings)
    return lhs - rhs

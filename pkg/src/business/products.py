"""Products of parabolic cylinder functions as integrals.

Each evaluator builds its coefficient-bearing integrals as :class:`QuadSpec`
objects, hands them to the double-exponential engine and sums the terms.
Hypergeometric factors receive the exact complement 1 - z of their argument,
formed from the endpoint distances the engine passes to every integrand.

Semi-infinite integrands exclude e^{-t} (the engine applies it); finite
integrands include it.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Tuple, Union

from src.config.constants import DISPATCH_TAG, SPECFUN_REL_ERR
from src.config.settings import Settings
from src.models import (
    EvalPoint,
    ProductValue,
    TermValue,
    QuadSpec,
    QuadShape,
    Representation,
    RegionError,
    ConvergenceError,
)
from src.algorithms.quadrature import integrate
from src.algorithms.specfun import (
    DEFAULT_SETTINGS,
    beta,
    elliptic_K,
    f21,
    gamma,
    incomplete_beta,
    legendre_P,
    rgamma,
)
from src.utils.validators import Validator

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
SQRT2 = math.sqrt(2.0)

# F(t, left, right) for a representation's hypergeometric factor
FactorFn = Callable[[float, float, float], float]


@dataclass(frozen=True)
class _Term:
    """A coefficient and the integral it multiplies; ``spec`` None means empty."""
    label: str
    coefficient: float
    spec: Optional[QuadSpec]


def _knot(x: float, y: float) -> float:
    """Switch point of the semi-infinite rules, scaled to the arguments."""
    return max(1.0, 2.0 * max(x * x, y * y))


def semi_infinite_spec(
        lower: float,
        alpha: float,
        g: Callable[[float, float, float], float],
        knot: float,
        settings: Settings
) -> QuadSpec:
    """QuadSpec for int_lower^inf e^{-t} (t - lower)^alpha g dt with the current budgets."""
    return QuadSpec(
        shape=QuadShape.SEMI_INFINITE,
        lower=lower,
        upper=math.inf,
        left_exponent=alpha,
        smooth_factor=g,
        rel_tol=settings.quad_rel_tol,
        abs_tol=settings.quad_abs_tol,
        max_evals=settings.quad_max_evals,
        knot=knot,
        max_levels=settings.quad_max_levels,
    )


def finite_spec(
        lower: float,
        upper: float,
        alpha: float,
        beta_: float,
        g: Callable[[float, float, float], float],
        settings: Settings
) -> Optional[QuadSpec]:
    """QuadSpec for a finite piece, or None when the interval is empty."""
    if not upper > lower:
        return None
    return QuadSpec(
        shape=QuadShape.FINITE,
        lower=lower,
        upper=upper,
        left_exponent=alpha,
        right_exponent=beta_,
        smooth_factor=g,
        rel_tol=settings.quad_rel_tol,
        abs_tol=settings.quad_abs_tol,
        max_evals=settings.quad_max_evals,
        max_levels=settings.quad_max_levels,
    )


def _run_terms(
        rep: Representation,
        terms: List[_Term],
        swapped: bool = False
) -> ProductValue:
    """Integrate every term with a non-zero coefficient and sum.

    Raises:
        ConvergenceError: If any integral misses its tolerance
    """
    values: List[TermValue] = []
    failed: List[str] = []
    for term in terms:
        if term.coefficient == 0.0 or term.spec is None:
            values.append(TermValue(term.label, term.coefficient, 0.0, 0.0, 0))
            continue
        outcome = integrate(term.spec)
        if not outcome.converged:
            failed.append(term.label)
        values.append(TermValue(
            term.label, term.coefficient, outcome.value, outcome.abs_err_est, outcome.evals
        ))

    total = math.fsum(v.value for v in values)
    quad_err = sum(v.abs_err_est for v in values)
    specfun_err = SPECFUN_REL_ERR * sum(abs(v.value) for v in values)
    err = quad_err + specfun_err
    evals = sum(v.evals for v in values)

    if failed:
        raise ConvergenceError(
            f"{rep.value}: integral(s) {', '.join(failed)} not converged",
            estimate=total,
            abs_err_est=err,
        )
    logger.debug(f"{rep.value}: value={total:.16e}, err={err:.1e}, evals={evals}")
    return ProductValue(total, err, rep, swapped, evals, tuple(values))


def folded_f21(
        a: float,
        b: float,
        c: float,
        zeta: float,
        left: float,
        k: float,
        settings: Settings
) -> float:
    """F(a, b; c; zeta) / left^{min(s, 0)} where 1 - zeta = left * k, s = c - a - b.

    For s < 0 the blow-up at zeta -> 1 is moved into the declared exponent
    through Euler's transformation.
    """
    s = c - a - b
    omz = left * k
    if s < 0.0:
        value, _ = f21(c - a, c - b, c, zeta, one_minus_z=omz, settings=settings)
        return k ** s * value
    value, _ = f21(a, b, c, zeta, one_minus_z=omz, settings=settings)
    return value


# ==================== (4.1) and (4.2) ====================

def _dd_argument(x2: float, y2: float, t: float) -> Tuple[float, float]:
    """z and 1 - z = x^2 y^2 / ((x^2 + 2t)(y^2 + 2t)) as products of ratios.

    Both are exact at x = y = 0, where the plain denominator underflows.
    """
    xs = x2 + 2.0 * t
    ys = y2 + 2.0 * t
    z = (2.0 * t / xs) * ((x2 + y2 + 2.0 * t) / ys)
    return min(z, 1.0), (x2 / xs) * (y2 / ys)


def _dd_term(point: EvalPoint, settings: Settings, sign: float = 1.0) -> _Term:
    """The integral of (4.1) with its coefficient."""
    nu, mu = point.nu, point.mu
    x2, y2 = point.x * point.x, point.y * point.y
    a, b, c = -0.5 * nu, -0.5 * mu, 0.5 * (1.0 - nu - mu)
    alpha = -0.5 * (1.0 + nu + mu)

    # a zero argument turns (x^2 + 2t)^{nu/2} into a power of t
    fold_x = x2 == 0.0
    fold_y = y2 == 0.0
    if fold_x:
        alpha += 0.5 * nu
    if fold_y:
        alpha += 0.5 * mu

    def g(t: float, left: float, right: float) -> float:
        t = left
        xs = x2 + 2.0 * t
        ys = y2 + 2.0 * t
        z, omz = _dd_argument(x2, y2, t)
        value, _ = f21(a, b, c, z, one_minus_z=omz, settings=settings)
        fx = 2.0 ** (0.5 * nu) if fold_x else xs ** (0.5 * nu)
        fy = 2.0 ** (0.5 * mu) if fold_y else ys ** (0.5 * mu)
        return fx * fy * value

    coefficient = sign * math.exp(-0.25 * (x2 + y2)) * rgamma(c)
    spec = semi_infinite_spec(0.0, alpha, g, _knot(point.x, point.y), settings)
    return _Term("product", coefficient, spec)


def _swap_for_dd(point: EvalPoint) -> Tuple[EvalPoint, bool]:
    if 0.0 <= point.nu < 1.0 and point.mu < 0.0:
        logger.debug(f"Swapping (nu, x) and (mu, y) at {point}")
        return point.swapped(), True
    return point, False


def product_DD(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(x) D_mu(y) from the single semi-infinite integral.

    When 0 <= nu < 1 and mu < 0 the roles of (nu, x) and (mu, y) are
    exchanged first.

    Raises:
        RegionError: Outside nu < 0, mu < 1, x >= 0, y >= 0 after the swap
        ConvergenceError: If the integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    point, swapped = _swap_for_dd(point)
    Validator.check_region(Representation.R41, point)
    return _run_terms(Representation.R41, [_dd_term(point, settings)], swapped)


def product_DD_legendre(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(x) D_mu(y) with the Ferrers-function integrand.

    Zero arguments put the Legendre argument on the boundary; those points
    are evaluated by :func:`product_DD`.
    """
    settings = settings or DEFAULT_SETTINGS
    point, swapped = _swap_for_dd(point)
    Validator.check_region(Representation.R42, point)
    if point.x == 0.0 or point.y == 0.0:
        result = product_DD(point, settings)
        return replace(result, swapped=swapped)

    nu, mu, x, y = point.nu, point.mu, point.x, point.y
    x2, y2, xy = x * x, y * y, x * y
    order = 0.5 * (1.0 + nu + mu)
    degree = 0.5 * (mu - nu - 1.0)
    # the Ferrers factor behaves like t^{-order/2} at t = 0
    alpha = -order

    def g(t: float, left: float, right: float) -> float:
        t = left
        xs = x2 + 2.0 * t
        ys = y2 + 2.0 * t
        s = x2 + y2 + 2.0 * t
        root = math.sqrt(xs * ys)
        w = xy / root
        omw = 2.0 * t * s / (root * (root + xy))
        p = legendre_P(degree, order, w, one_minus_x=omw, one_plus_x=1.0 + w,
                       settings=settings)
        return (2.0 ** (-0.5 * order) * t ** (0.5 * order)
                * xs ** (0.25 * (nu - mu - 1.0)) * ys ** (0.25 * (mu - nu - 1.0))
                * s ** (0.5 * order) * p)

    coefficient = math.exp(-0.25 * (x2 + y2))
    spec = semi_infinite_spec(0.0, alpha, g, _knot(x, y), settings)
    return _run_terms(Representation.R42, [_Term("product", coefficient, spec)], swapped)


# ==================== (4.3) and (4.4) ====================

def _negx_finite_argument(x2: float, y2: float, t: float, right: float) -> Tuple[float, float]:
    """z and 1 - z on [0, x^2/2]; x^2 - 2t is formed as 2 (U - t)."""
    xm = 2.0 * right
    yp = y2 + 2.0 * t
    den = xm * yp
    return 2.0 * t * (xm - y2) / den, x2 * y2 / den


def _negx_tail_argument(x2: float, y2: float, t: float, left: float) -> Tuple[float, float]:
    """zeta and k with 1 - zeta = left * k on [x^2/2, inf)."""
    ys = y2 + 2.0 * left
    den = 2.0 * t * ys
    return x2 * y2 / den, 2.0 * (2.0 * t + y2) / den


def _terms_43(point: EvalPoint, settings: Settings) -> List[_Term]:
    nu, mu, x, y = point.nu, point.mu, point.x, point.y
    x2, y2 = x * x, y * y
    upper = 0.5 * x2
    damp = math.exp(0.25 * (x2 - y2))

    a2, b2, c2 = -0.5 * mu, 0.5 * (nu + 1.0), 1.0 + 0.5 * (nu - mu)
    beta2 = -0.5 * (nu + 1.0)

    def g2(t: float, left: float, right: float) -> float:
        t = left
        z, omz = _negx_finite_argument(x2, y2, t, right)
        value, _ = f21(a2, b2, c2, z, one_minus_z=omz, settings=settings)
        return math.exp(-t) * 2.0 ** beta2 * (y2 + 2.0 * t) ** (0.5 * mu) * value

    a3, b3, c3 = 0.5 * (1.0 - nu), 0.5 * (1.0 - mu), 1.5
    s3 = c3 - a3 - b3
    alpha3 = -0.5 * (1.0 + nu + mu)

    def g3(t: float, left: float, right: float) -> float:
        zeta, k = _negx_tail_argument(x2, y2, t, left)
        value = folded_f21(a3, b3, c3, zeta, left, k, settings)
        return (2.0 ** alpha3 * t ** (0.5 * (nu - 1.0))
                * (y2 + 2.0 * left) ** (0.5 * (mu - 1.0)) * value)

    coef2 = SQRT2 * SQRT_PI * damp * rgamma(-nu) * rgamma(c2)
    coef3 = (x * y * SQRT_PI * 2.0 ** (2.0 + nu + 0.5 * mu) * damp
             * rgamma(-0.5 * nu) * rgamma(-0.5 * mu))
    knot = _knot(x, y)
    return [
        _dd_term(point, settings),
        _Term("finite", coef2,
              finite_spec(0.0, upper, 0.5 * (nu - mu), beta2, g2, settings)),
        _Term("tail", coef3,
              semi_infinite_spec(upper, alpha3 + min(s3, 0.0), g3, knot, settings)),
    ]


def _terms_44(point: EvalPoint, settings: Settings) -> List[_Term]:
    nu, mu, x, y = point.nu, point.mu, point.x, point.y
    x2, y2 = x * x, y * y
    upper = 0.5 * x2
    damp = math.exp(0.25 * (x2 - y2))

    a2, b2, c2 = 0.5 * (1.0 - mu), 1.0 + 0.5 * nu, 1.0 + 0.5 * (nu - mu)
    beta2 = -0.5 * nu - 1.0

    def g2(t: float, left: float, right: float) -> float:
        t = left
        z, omz = _negx_finite_argument(x2, y2, t, right)
        value, _ = f21(a2, b2, c2, z, one_minus_z=omz, settings=settings)
        return math.exp(-t) * 2.0 ** beta2 * (y2 + 2.0 * t) ** (0.5 * (mu - 1.0)) * value

    a3, b3, c3 = -0.5 * nu, -0.5 * mu, 0.5
    s3 = c3 - a3 - b3
    alpha3 = -0.5 * (1.0 + nu + mu)

    def g3(t: float, left: float, right: float) -> float:
        zeta, k = _negx_tail_argument(x2, y2, t, left)
        value = folded_f21(a3, b3, c3, zeta, left, k, settings)
        return (2.0 ** alpha3 * t ** (0.5 * nu)
                * (y2 + 2.0 * left) ** (0.5 * mu) * value)

    coef2 = x * y * SQRT2 * SQRT_PI * damp * rgamma(-nu) * rgamma(c2)
    coef3 = (2.0 ** (0.5 * (3.0 + 2.0 * nu + mu)) * SQRT_PI * damp
             * rgamma(0.5 * (1.0 - nu)) * rgamma(0.5 * (1.0 - mu)))
    knot = _knot(x, y)
    return [
        _dd_term(point, settings, sign=-1.0),
        _Term("finite", coef2,
              finite_spec(0.0, upper, 0.5 * (nu - mu), beta2, g2, settings)),
        _Term("tail", coef3,
              semi_infinite_spec(upper, alpha3 + min(s3, 0.0), g3, knot, settings)),
    ]


def product_DnegD_43(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(-x) D_mu(y) as the sum of three integrals.

    At x = 0 the finite piece is empty and the tail coefficient vanishes,
    so the point is evaluated by :func:`product_DD`.

    Raises:
        RegionError: Outside -2 < nu < 0, mu < 0, x >= 0, y > 0
        ConvergenceError: If any integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.R43, point)
    if point.x == 0.0:
        result = product_DD(point, settings)
        return replace(result, representation=Representation.R43)
    return _run_terms(Representation.R43, _terms_43(point, settings))


def product_DnegD_44(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(-x) D_mu(y), second three-integral form.

    Raises:
        RegionError: Outside -1 < nu < 0, mu < 1, x > 0, y > 0
        ConvergenceError: If any integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.R44, point)
    return _run_terms(Representation.R44, _terms_44(point, settings))


def product_Dneg_dispatch(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(-x) D_mu(y) by whichever of (4.3)/(4.4) covers the point, (4.4) first.

    Raises:
        RegionError: If neither region contains the point
    """
    if Validator.in_region(Representation.R44, point):
        logger.info(f"Dispatching {point} to {Representation.R44.value}")
        return product_DnegD_44(point, settings)
    if Validator.in_region(Representation.R43, point):
        logger.info(f"Dispatching {point} to {Representation.R43.value}")
        return product_DnegD_43(point, settings)
    raise RegionError(
        f"({point.nu}, {point.mu}, {point.x}, {point.y}) is outside both "
        f"{Representation.R43.value} and {Representation.R44.value}"
    )


# ==================== (5.1) and D_nu I_{1/4} ====================

def _phi_terms(
        nu: float,
        mu: float,
        x: float,
        y: float,
        settings: Settings,
        finite_factor: Optional[FactorFn] = None,
        tail_factor: Optional[FactorFn] = None,
        scale: float = 1.0
) -> List[_Term]:
    """Both integrals of D_nu(x) Phi((1-mu)/2; 3/2; y), split at t = y.

    ``finite_factor`` and ``tail_factor`` replace the default hypergeometric
    evaluation; the tail one must return F / left^{min(s, 0)}.
    """
    x2 = x * x
    growth = math.exp(-0.25 * x2 + y)

    a1, b1, c1 = -0.5 * nu, 0.5 * (mu + 1.0), 1.0 + 0.5 * (mu - nu)

    def default_finite(t: float, left: float, right: float) -> float:
        t = left
        xs = x2 + 2.0 * t
        z = -t * (x2 - 2.0 * right) / (xs * right)
        value, _ = f21(a1, b1, c1, z, one_minus_z=x2 * y / (xs * right), settings=settings)
        return value

    fin = finite_factor or default_finite

    def g1(t: float, left: float, right: float) -> float:
        t = left
        return math.exp(-t) * (x2 + 2.0 * t) ** (0.5 * nu) * fin(t, left, right)

    a2, b2, c2 = 0.5 * (1.0 - mu), 0.5 * (1.0 - nu), 1.5
    s2 = c2 - a2 - b2
    alpha2 = -0.5 * (1.0 + nu + mu)

    def default_tail(t: float, left: float, right: float) -> float:
        xs = x2 + 2.0 * left
        zeta = x2 * y / (t * xs)
        k = (x2 + 2.0 * t) / (t * xs)
        return folded_f21(a2, b2, c2, zeta, left, k, settings)

    tail = tail_factor or default_tail

    def g2(t: float, left: float, right: float) -> float:
        return (t ** (0.5 * (mu - 1.0)) * (x2 + 2.0 * left) ** (0.5 * (nu - 1.0))
                * tail(t, left, right))

    coef1 = (scale * 0.5 * SQRT_PI * growth / math.sqrt(y)
             * rgamma(0.5 * (1.0 - mu)) * rgamma(c1))
    coef2 = scale * x * growth * rgamma(-0.5 * nu)
    return [
        _Term("finite", coef1,
              finite_spec(0.0, y, 0.5 * (mu - nu), -0.5 * (mu + 1.0), g1, settings)),
        _Term("tail", coef2,
              semi_infinite_spec(y, alpha2 + min(s2, 0.0), g2, _knot(x, y), settings)),
    ]


def product_D_phi(point: EvalPoint, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(x) Phi((1-mu)/2; 3/2; y); here y is the Kummer argument itself.

    Raises:
        RegionError: Outside nu < 0, -2 < mu < 1, x > 0, y > 0
        ConvergenceError: If either integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.R51, point)
    terms = _phi_terms(point.nu, point.mu, point.x, point.y, settings)
    return _run_terms(Representation.R51, terms)


def product_DI(nu: float, x: float, y: float, settings: Optional[Settings] = None) -> ProductValue:
    """D_nu(x) I_{1/4}(y) through the Kummer form at mu = -1/2, argument 2y.

    Where the Ferrers functions have real arguments they replace the
    hypergeometric factor; elsewhere the factor is evaluated directly.

    Raises:
        RegionError: Outside nu < 0, x > 0, y > 0
        ConvergenceError: If either integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.DI, EvalPoint(nu, -0.5, x, y))
    x2 = x * x
    big_y = 2.0 * y
    order = 0.25 * (1.0 + 2.0 * nu)

    a1, b1, c1 = -0.5 * nu, 0.25, 0.75 - 0.5 * nu
    gamma_c1 = gamma(c1)

    def finite_factor(t: float, left: float, right: float) -> float:
        xs = x2 + 2.0 * t
        gap = x2 - 2.0 * right
        omz = x2 * big_y / (xs * right)
        minus_z = t * gap / (xs * right)
        if gap <= 0.0:
            value, _ = f21(a1, b1, c1, -minus_z, one_minus_z=omz, settings=settings)
            return value
        q = 2.0 * t * gap / (x2 * big_y)
        p = legendre_P(-0.25, order, 1.0 - q, one_minus_x=q,
                       one_plus_x=2.0 * xs * right / (x2 * big_y), settings=settings)
        return gamma_c1 * omz ** -0.25 * minus_z ** (0.5 * order) * p

    # F(3/4, (1-nu)/2; 3/2; zeta) as a difference of Ferrers functions
    s2 = 0.25 * (1.0 + 2.0 * nu)
    degree = 0.5 * nu - 0.25
    tail_coef = -(2.0 ** (-2.25 - 0.5 * nu) * gamma(0.25) * gamma(-0.5 * nu) / SQRT_PI)

    def tail_factor(t: float, left: float, right: float) -> float:
        xs = x2 + 2.0 * left
        zeta = x2 * big_y / (t * xs)
        omz = left * (x2 + 2.0 * t) / (t * xs)
        r = math.sqrt(zeta)
        omr = omz / (1.0 + r)
        p_plus = legendre_P(degree, order, r, one_minus_x=omr, one_plus_x=1.0 + r,
                            settings=settings)
        p_minus = legendre_P(degree, order, -r, one_minus_x=1.0 + r, one_plus_x=omr,
                             settings=settings)
        value = tail_coef / r * omz ** (0.5 * s2) * (p_plus - p_minus)
        if s2 < 0.0:
            value *= left ** -s2
        return value

    scale = (0.5 * y) ** 0.25 * math.exp(-y) / gamma(1.25)
    terms = _phi_terms(nu, -0.5, x, big_y, settings, finite_factor, tail_factor, scale)
    return _run_terms(Representation.DI, terms)


# ==================== Remaining specializations ====================

def product_KK(x: float, y: float, settings: Optional[Settings] = None) -> ProductValue:
    """K_{1/4}(x) K_{1/4}(y) with a complete elliptic integral in the integrand.

    Raises:
        RegionError: Unless x > 0 and y > 0
        ConvergenceError: If the integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.KK, EvalPoint(-0.5, -0.5, x, y))

    def g(t: float, left: float, right: float) -> float:
        t = left
        xs = 2.0 * x + t
        ys = 2.0 * y + t
        r = math.sqrt(x * y / (xs * ys))
        return (xs * ys) ** -0.25 * elliptic_K(0.5 - r, one_minus_m=0.5 + r)

    coefficient = SQRT2 * (x * y) ** -0.25 * math.exp(-(x + y))
    spec = semi_infinite_spec(0.0, 0.0, g, max(1.0, 2.0 * max(x, y)), settings)
    return _run_terms(Representation.KK, [_Term("product", coefficient, spec)])


def product_erfc2(x: float, y: float, settings: Optional[Settings] = None) -> ProductValue:
    """erfc(x) erfc(y) with an arcsine integrand.

    Raises:
        RegionError: Unless x >= 0 and y >= 0
        ConvergenceError: If the integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.ERFC2, EvalPoint(-1.0, -1.0, x, y))
    x2, y2 = x * x, y * y
    r2 = x2 + y2
    at_origin = r2 == 0.0

    def g(t: float, left: float, right: float) -> float:
        t = left
        q = (t / (x2 + t)) * ((r2 + t) / (y2 + t))
        omq = (x2 / (x2 + t)) * (y2 / (y2 + t))
        # arcsin(sqrt(q)) with 1 - q kept exact
        angle = math.atan2(math.sqrt(q), math.sqrt(omq))
        if at_origin:
            return angle
        return (r2 + t) ** -0.5 * angle

    coefficient = 2.0 * math.exp(-r2) * math.pi ** -1.5
    spec = semi_infinite_spec(0.0, -0.5 if at_origin else 0.0, g,
                          max(1.0, 2.0 * r2), settings)
    return _run_terms(Representation.ERFC2, [_Term("product", coefficient, spec)])


def product_Dneg_erfc(
        nu: float,
        x: float,
        y: float,
        settings: Optional[Settings] = None
) -> ProductValue:
    """D_nu(-x) erfc(y) with incomplete beta functions in the integrands.

    The middle integral uses B(w; (1+nu)/2, -nu/2) where w >= 0 and
    nu > -1, and the equivalent hypergeometric factor otherwise.

    Raises:
        RegionError: Outside -2 < nu < 0, x >= 0, y > 0
        ConvergenceError: If any integral does not converge
    """
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(Representation.DNEG_ERFC, EvalPoint(nu, -1.0, x, y))
    x2, y2 = x * x, y * y
    a = -0.5 * nu
    knot = _knot(x, SQRT2 * y)

    def g1(t: float, left: float, right: float) -> float:
        t = left
        xs = x2 + 2.0 * t
        ys = y2 + t
        z = min((t / xs) * ((x2 + 2.0 * y2 + 2.0 * t) / ys), 1.0)
        b = incomplete_beta(z, a, 0.5, one_minus_z=(x2 / xs) * (y2 / ys), settings=settings)
        return (x2 + 2.0 * y2 + 2.0 * t) ** (0.5 * nu) * ys ** (-0.5 * (1.0 + nu)) * b

    coef1 = -nu * math.exp(-0.25 * (x2 + 4.0 * y2)) / (2.0 * SQRT_PI) * rgamma(1.0 - 0.5 * nu)
    terms = [_Term("product", coef1, semi_infinite_spec(0.0, 0.0, g1, knot, settings))]
    if x == 0.0:
        return _run_terms(Representation.DNEG_ERFC, terms)

    damp = math.exp(0.25 * (x2 - 4.0 * y2))
    a2 = 0.5 * (1.0 + nu)

    def g2(t: float, left: float, right: float) -> float:
        t = left
        gap = 2.0 * y2 - 2.0 * right
        if nu > -1.0 and gap > 0.0:
            w = min(t * gap / (x2 * y2), 1.0)
            omw = 2.0 * right * (y2 + t) / (x2 * y2)
            b = incomplete_beta(w, a2, a, one_minus_z=omw, settings=settings)
            return (math.exp(-t) * a2 / SQRT2 * gap ** -a2 * (y2 + t) ** (0.5 * nu)
                    * b / t ** a2)
        xm = 2.0 * right
        den = xm * (y2 + t)
        z = t * (xm - 2.0 * y2) / den
        value, _ = f21(0.5, a2, a2 + 1.0, z, one_minus_z=x2 * y2 / den, settings=settings)
        return math.exp(-t) * xm ** -a2 * (2.0 * (y2 + t)) ** -0.5 * value

    full_beta = beta(a, a)

    def g3(t: float, left: float, right: float) -> float:
        ys = 2.0 * y2 + 2.0 * left
        zeta = x2 * y2 / (t * ys)
        omz = 2.0 * left * (y2 + t) / (t * ys)
        r = math.sqrt(zeta)
        low = 0.5 * omz / (1.0 + r)
        delta = full_beta - 2.0 * incomplete_beta(low, a, a, one_minus_z=0.5 * (1.0 + r),
                                                  settings=settings)
        return ys ** (-0.5 * (1.0 + nu)) * (y2 + t) ** (0.5 * nu) * delta

    coef2 = 2.0 * damp * rgamma(-nu) * rgamma(a2 + 1.0)
    coef3 = SQRT2 / SQRT_PI * damp * rgamma(a)
    upper = 0.5 * x2
    terms.append(_Term("finite", coef2, finite_spec(0.0, upper, a2, 0.0, g2, settings)))
    terms.append(_Term("tail", coef3, semi_infinite_spec(upper, 0.0, g3, knot, settings)))
    return _run_terms(Representation.DNEG_ERFC, terms)


# ==================== Dispatch ====================

_EVALUATORS: Dict[Representation, Callable[[EvalPoint, Settings], ProductValue]] = {
    Representation.R41: product_DD,
    Representation.R42: product_DD_legendre,
    Representation.R43: product_DnegD_43,
    Representation.R44: product_DnegD_44,
    Representation.R51: product_D_phi,
    Representation.KK: lambda p, s: product_KK(p.x, p.y, s),
    Representation.ERFC2: lambda p, s: product_erfc2(p.x, p.y, s),
    Representation.DI: lambda p, s: product_DI(p.nu, p.x, p.y, s),
    Representation.DNEG_ERFC: lambda p, s: product_Dneg_erfc(p.nu, p.x, p.y, s),
}


def evaluate(
        rep: Union[Representation, str],
        point: EvalPoint,
        settings: Optional[Settings] = None
) -> ProductValue:
    """Evaluate a representation by enum or command-line tag.

    The tag ``dneg`` selects :func:`product_Dneg_dispatch`. Specializations
    read only the fields they use (KK and erfc2: x, y; DI and dneg-erfc:
    nu, x, y).
    """
    settings = settings or DEFAULT_SETTINGS
    if rep == DISPATCH_TAG:
        return product_Dneg_dispatch(point, settings)
    if isinstance(rep, str):
        rep = Representation.from_tag(rep)
    return _EVALUATORS[rep](point, settings)


def in_region(rep: Union[Representation, str], point: EvalPoint) -> bool:
    """Whether :func:`evaluate` accepts the point, including the (4.1) swap."""
    if rep == DISPATCH_TAG:
        return (Validator.in_region(Representation.R43, point)
                or Validator.in_region(Representation.R44, point))
    if isinstance(rep, str):
        rep = Representation.from_tag(rep)
    probe = point
    if rep in (Representation.KK, Representation.ERFC2):
        probe = EvalPoint(-1.0, -1.0, point.x, point.y)
    elif rep in (Representation.DI, Representation.DNEG_ERFC):
        probe = EvalPoint(point.nu, -1.0, point.x, point.y)
    elif rep in (Representation.R41, Representation.R42):
        probe, _ = _swap_for_dd(point)
    return Validator.in_region(rep, probe)


def coefficient_terms(
        rep: Representation,
        point: EvalPoint,
        settings: Optional[Settings] = None
) -> Tuple[TermValue, ...]:
    """Evaluated coefficient-bearing terms of (4.3) or (4.4), in order.

    Raises:
        ValueError: For any other representation
    """
    if rep not in (Representation.R43, Representation.R44):
        raise ValueError(f"coefficient_terms: {rep.value} is not a three-term form")
    settings = settings or DEFAULT_SETTINGS
    Validator.check_region(rep, point)
    builder = _terms_43 if rep is Representation.R43 else _terms_44
    return _run_terms(rep, builder(point, settings)).terms

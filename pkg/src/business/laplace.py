"""Numerical checks of the inverse Laplace transforms behind the products.

Every identity has the form LHS(p) = int e^{-pt} f(t) dt. The right side is
integrated with the engine's e^{-t} weight and a smooth factor carrying
e^{-(p-1)t}; the left side is assembled from :mod:`src.algorithms.pcf` and
:mod:`src.algorithms.specfun`. Arguments keep their squared roles:
D_nu(sqrt(2xp)) for the transforms of a single parabolic cylinder function,
Phi(.; .; p x^2/2) for the Kummer ones.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from src.config.settings import Settings
from src.models import (
    EvalPoint,
    IdentityTag,
    QuadSpec,
    RegionError,
    ValidationError,
    ConvergenceError,
)
from src.algorithms.quadrature import integrate
from src.algorithms.pcf import pcf_D
from src.algorithms.specfun import DEFAULT_SETTINGS, f21, gamma, kummer_phi, rgamma
from .products import finite_spec, folded_f21, semi_infinite_spec

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

BracketTest = Callable[[EvalPoint], bool]
# left side and the (coefficient, integral) pieces of the right side
Sides = Tuple[float, List[Tuple[float, Optional[QuadSpec]]]]

BRACKETS: Dict[IdentityTag, Tuple[BracketTest, str]] = {
    IdentityTag.I31: (lambda q: q.nu < 0 and q.x > 0, "nu < 0, x > 0"),
    IdentityTag.I32: (lambda q: q.mu < 1 and q.y > 0, "mu < 1, y > 0"),
    IdentityTag.I35: (lambda q: -2 < q.nu < 1 and q.x > 0, "-2 < nu < 1, x > 0"),
    IdentityTag.I38: (lambda q: -1 < q.nu < 0 and q.x > 0, "-1 < nu < 0, x > 0"),
    IdentityTag.I33: (
        lambda q: q.nu < 0 and q.mu < 1 and q.x > 0 and q.y > 0,
        "nu < 0, mu < 1, x > 0, y > 0",
    ),
    IdentityTag.I37: (
        lambda q: -2 < q.nu < 1 and q.mu < 0 and q.x > 0 and q.y > 0,
        "-2 < nu < 1, mu < 0, x > 0, y > 0",
    ),
    IdentityTag.I39: (
        lambda q: -1 < q.nu < 0 and q.mu < 1 and q.x > 0 and q.y > 0,
        "-1 < nu < 0, mu < 1, x > 0, y > 0",
    ),
}


@dataclass(frozen=True)
class LaplacePair:
    """Both sides of an identity at one p."""
    identity: IdentityTag
    p: float
    lhs: float
    rhs: float
    rhs_err: float
    evals: int

    @property
    def residual(self) -> float:
        """|LHS - RHS| / |LHS|."""
        return abs(self.lhs - self.rhs) / abs(self.lhs)


def _knot(p: float, *scales: float) -> float:
    return max(1.0, 2.0 * max(scales)) / min(p, 1.0)


def _single_pcf(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, x = q.nu, q.x
    lhs = gamma(-0.5 * nu) * math.exp(0.5 * x * p) * pcf_D(nu, math.sqrt(2.0 * x * p), s).value

    def g(t: float, left: float, right: float) -> float:
        t = left
        return math.exp(-(p - 1.0) * t) * (t + x) ** (0.5 * (nu - 1.0))

    coef = 2.0 ** (0.5 * nu) * math.sqrt(x)
    return lhs, [(coef, semi_infinite_spec(0.0, -0.5 * nu - 1.0, g, _knot(p, x), s))]


def _single_pcf_scaled(p: float, q: EvalPoint, s: Settings) -> Sides:
    mu, y = q.mu, q.y
    lhs = (gamma(0.5 * (1.0 - mu)) / math.sqrt(p) * math.exp(0.5 * y * p)
           * pcf_D(mu, math.sqrt(2.0 * y * p), s).value)

    def g(t: float, left: float, right: float) -> float:
        t = left
        return math.exp(-(p - 1.0) * t) * (t + y) ** (0.5 * mu)

    coef = 2.0 ** (0.5 * mu)
    return lhs, [(coef, semi_infinite_spec(0.0, -0.5 * (mu + 1.0), g, _knot(p, y), s))]


def _kummer_odd(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, x = q.nu, q.x
    half = 0.5 * x * x
    lhs = (x * SQRT_2_OVER_PI * gamma(1.0 + 0.5 * nu) * gamma(0.5 * (1.0 - nu))
           * math.exp(-half * p) * kummer_phi(0.5 * (1.0 - nu), 1.5, half * p, s).value)

    def g(t: float, left: float, right: float) -> float:
        return math.exp(-p * t)

    return lhs, [(1.0, finite_spec(0.0, half, 0.5 * nu, -0.5 * (1.0 + nu), g, s))]


def _kummer_even(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, x = q.nu, q.x
    half = 0.5 * x * x
    lhs = (SQRT_2_OVER_PI / x * gamma(0.5 * (1.0 + nu)) * gamma(-0.5 * nu)
           * math.exp(-half * p) * kummer_phi(-0.5 * nu, 0.5, half * p, s).value)

    def g(t: float, left: float, right: float) -> float:
        return math.exp(-p * t)

    return lhs, [(1.0, finite_spec(0.0, half, 0.5 * (nu - 1.0), -0.5 * nu - 1.0, g, s))]


def _pcf_pcf(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, mu, x, y = q.nu, q.mu, q.x, q.y
    lhs = (math.exp(0.5 * p * (x + y)) / math.sqrt(p)
           * pcf_D(nu, math.sqrt(2.0 * x * p), s).value
           * pcf_D(mu, math.sqrt(2.0 * y * p), s).value)
    a, b, c = -0.5 * nu, -0.5 * mu, 0.5 * (1.0 - nu - mu)

    def g(t: float, left: float, right: float) -> float:
        t = left
        z = min((t / (x + t)) * ((x + y + t) / (y + t)), 1.0)
        omz = (x / (x + t)) * (y / (y + t))
        value, _ = f21(a, b, c, z, one_minus_z=omz, settings=s)
        return math.exp(-(p - 1.0) * t) * (y + t) ** (0.5 * mu) * (x + t) ** (0.5 * nu) * value

    coef = 2.0 ** (0.5 * (nu + mu)) * rgamma(c)
    spec = semi_infinite_spec(0.0, -0.5 * (1.0 + nu + mu), g, _knot(p, x, y), s)
    return lhs, [(coef, spec)]


def _split_arguments(x2: float, y: float, t: float, right: float) -> Tuple[float, float]:
    """z and 1 - z on [0, x^2/2] with x^2 - 2t = 2 (U - t)."""
    xm = 2.0 * right
    den = xm * (y + t)
    return t * (xm - 2.0 * y) / den, x2 * y / den


def _tail_arguments(x2: float, y: float, t: float, left: float) -> Tuple[float, float]:
    """zeta and k with 1 - zeta = left * k on [x^2/2, inf)."""
    ys = 2.0 * y + 2.0 * left
    return x2 * y / (t * ys), 2.0 * (t + y) / (t * ys)


def _pcf_kummer_odd(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, mu, x, y = q.nu, q.mu, q.x, q.y
    x2 = x * x
    upper = 0.5 * x2
    lhs = (math.exp(0.5 * p * (y - x2)) * pcf_D(mu, math.sqrt(2.0 * y * p), s).value
           * kummer_phi(0.5 * (1.0 - nu), 1.5, 0.5 * p * x2, s).value)

    a1, b1, c1 = -0.5 * mu, 0.5 * (nu + 1.0), 1.0 + 0.5 * (nu - mu)
    beta1 = -0.5 * (nu + 1.0)

    def g1(t: float, left: float, right: float) -> float:
        t = left
        z, omz = _split_arguments(x2, y, t, right)
        value, _ = f21(a1, b1, c1, z, one_minus_z=omz, settings=s)
        return math.exp(-p * t) * 2.0 ** beta1 * (y + t) ** (0.5 * mu) * value

    a2, b2, c2 = 0.5 * (1.0 - nu), 0.5 * (1.0 - mu), 1.5
    s2 = c2 - a2 - b2
    alpha2 = -0.5 * (1.0 + nu + mu)

    def g2(t: float, left: float, right: float) -> float:
        zeta, k = _tail_arguments(x2, y, t, left)
        value = folded_f21(a2, b2, c2, zeta, left, k, s)
        return (math.exp(-(p - 1.0) * t) * 2.0 ** alpha2 * t ** (0.5 * (nu - 1.0))
                * (2.0 * y + 2.0 * left) ** (0.5 * (mu - 1.0)) * value)

    coef1 = (2.0 ** (0.5 * (nu + mu)) * SQRT_PI / x
             * rgamma(0.5 * (1.0 - nu)) * rgamma(c1))
    coef2 = 2.0 ** (0.5 * (2.0 + nu + mu)) * math.sqrt(y) * rgamma(-0.5 * mu)
    return lhs, [
        (coef1, finite_spec(0.0, upper, 0.5 * (nu - mu), beta1, g1, s)),
        (coef2, semi_infinite_spec(upper, alpha2 + min(s2, 0.0), g2, _knot(p, x2, y), s)),
    ]


def _pcf_kummer_even(p: float, q: EvalPoint, s: Settings) -> Sides:
    nu, mu, x, y = q.nu, q.mu, q.x, q.y
    x2 = x * x
    upper = 0.5 * x2
    lhs = (math.exp(0.5 * p * (y - x2)) / math.sqrt(p)
           * pcf_D(mu, math.sqrt(2.0 * y * p), s).value
           * kummer_phi(-0.5 * nu, 0.5, 0.5 * p * x2, s).value)

    a1, b1, c1 = 0.5 * (1.0 - mu), 1.0 + 0.5 * nu, 1.0 + 0.5 * (nu - mu)
    beta1 = -0.5 * nu - 1.0

    def g1(t: float, left: float, right: float) -> float:
        t = left
        z, omz = _split_arguments(x2, y, t, right)
        value, _ = f21(a1, b1, c1, z, one_minus_z=omz, settings=s)
        return math.exp(-p * t) * 2.0 ** beta1 * (y + t) ** (0.5 * (mu - 1.0)) * value

    a2, b2, c2 = -0.5 * nu, -0.5 * mu, 0.5
    s2 = c2 - a2 - b2
    alpha2 = -0.5 * (1.0 + nu + mu)

    def g2(t: float, left: float, right: float) -> float:
        zeta, k = _tail_arguments(x2, y, t, left)
        value = folded_f21(a2, b2, c2, zeta, left, k, s)
        return (math.exp(-(p - 1.0) * t) * 2.0 ** alpha2 * t ** (0.5 * nu)
                * (2.0 * y + 2.0 * left) ** (0.5 * mu) * value)

    coef1 = (x * math.sqrt(y) * SQRT_PI * 2.0 ** (0.5 * (1.0 + nu + mu))
             * rgamma(-0.5 * nu) * rgamma(c1))
    coef2 = 2.0 ** (0.5 * (1.0 + nu + mu)) * rgamma(0.5 * (1.0 - mu))
    return lhs, [
        (coef1, finite_spec(0.0, upper, 0.5 * (nu - mu), beta1, g1, s)),
        (coef2, semi_infinite_spec(upper, alpha2 + min(s2, 0.0), g2, _knot(p, x2, y), s)),
    ]


_BUILDERS = {
    IdentityTag.I31: _single_pcf,
    IdentityTag.I32: _single_pcf_scaled,
    IdentityTag.I35: _kummer_odd,
    IdentityTag.I38: _kummer_even,
    IdentityTag.I33: _pcf_pcf,
    IdentityTag.I37: _pcf_kummer_odd,
    IdentityTag.I39: _pcf_kummer_even,
}


def check_bracket(identity: IdentityTag, params: EvalPoint) -> None:
    """Raise RegionError when params violate the identity's bracket."""
    test, description = BRACKETS[identity]
    if not test(params):
        raise RegionError(
            f"{identity.value}: ({params.nu}, {params.mu}, {params.x}, {params.y}) "
            f"violates {description}"
        )


def laplace_pair(
        identity: IdentityTag,
        p: float,
        params: EvalPoint,
        settings: Optional[Settings] = None
) -> LaplacePair:
    """Evaluate both sides of an identity.

    Args:
        identity: Identity tag
        p: Transform variable, p > 0
        params: (nu, mu, x, y); unused fields are ignored
        settings: Numerical settings

    Returns:
        LaplacePair with the left side, the integrated right side and its error

    Raises:
        ValidationError: If p <= 0
        RegionError: If the bracket conditions fail
        ConvergenceError: If the right side does not converge
    """
    if not p > 0:
        raise ValidationError(f"p must be positive, got {p}")
    check_bracket(identity, params)
    settings = settings or DEFAULT_SETTINGS

    lhs, pieces = _BUILDERS[identity](p, params, settings)
    rhs = 0.0
    err = 0.0
    evals = 0
    for coef, spec in pieces:
        if coef == 0.0 or spec is None:
            continue
        outcome = integrate(spec)
        if not outcome.converged:
            raise ConvergenceError(
                f"{identity.value} at p={p}: right side not converged",
                estimate=rhs + coef * outcome.value,
                abs_err_est=err + abs(coef) * outcome.abs_err_est,
            )
        rhs += coef * outcome.value
        err += abs(coef) * outcome.abs_err_est
        evals += outcome.evals

    logger.debug(f"{identity.value} p={p}: lhs={lhs:.16e} rhs={rhs:.16e}")
    return LaplacePair(identity, p, lhs, rhs, err, evals)


def laplace_residual(
        identity: IdentityTag,
        p: float,
        params: EvalPoint,
        settings: Optional[Settings] = None
) -> float:
    """Relative residual |LHS(p) - RHS(p)| / |LHS(p)| of an identity."""
    return laplace_pair(identity, p, params, settings).residual

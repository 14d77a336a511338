"""Value objects returned by the special-function and product layers."""

import math
from dataclasses import dataclass, field
from typing import Dict, Any, Tuple

from .base import Representation, ValidationError


@dataclass(frozen=True)
class SeriesResult:
    """A scalar special-function value with convergence diagnostics."""
    value: float
    abs_err_est: float
    terms_used: int
    converged: bool = True

    def __post_init__(self):
        if self.abs_err_est < 0:
            raise ValidationError("abs_err_est must be non-negative")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class HypParams:
    """Parameters a, b, c and argument z of F(a,b;c;z) or Phi(a;b;z)."""
    a: float
    b: float
    c: float
    z: float

    def swapped(self) -> 'HypParams':
        """Return the parameters with a and b exchanged."""
        return HypParams(self.b, self.a, self.c, self.z)


@dataclass(frozen=True)
class PcfValue:
    """Value of D_nu(z) with its error estimate."""
    value: float
    abs_err_est: float

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class EvalPoint:
    """Orders and arguments (nu, mu, x, y) of a product evaluation.

    Region checks are representation specific and live in the validators.
    """
    nu: float
    mu: float
    x: float
    y: float

    def __post_init__(self):
        for name in ('nu', 'mu', 'x', 'y'):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValidationError(f"{name} must be a finite real number, got {value!r}")

    def swapped(self) -> 'EvalPoint':
        """Exchange (nu, x) with (mu, y)."""
        return EvalPoint(self.mu, self.nu, self.y, self.x)

    def to_dict(self) -> Dict[str, float]:
        return {'nu': self.nu, 'mu': self.mu, 'x': self.x, 'y': self.y}


@dataclass(frozen=True)
class TermValue:
    """One coefficient-bearing integral of a multi-term representation."""
    label: str
    coefficient: float
    integral: float
    integral_err: float
    evals: int = 0

    @property
    def value(self) -> float:
        return self.coefficient * self.integral

    @property
    def abs_err_est(self) -> float:
        return abs(self.coefficient) * self.integral_err


@dataclass(frozen=True)
class ProductValue:
    """Evaluated product with error estimate and dispatch metadata."""
    value: float
    abs_err_est: float
    representation: Representation
    swapped: bool = False
    evals: int = 0
    terms: Tuple[TermValue, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'value': self.value,
            'abs_err_est': self.abs_err_est,
            'representation': self.representation.value,
            'swapped': self.swapped,
            'evals': self.evals,
        }


@dataclass(frozen=True)
class OracleValue:
    """Reference value rounded to double precision."""
    value: float
    guaranteed_digits: int

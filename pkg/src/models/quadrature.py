"""Quadrature specification and outcome models."""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from src.config.constants import (
    QUAD_REL_TOL,
    QUAD_ABS_TOL,
    QUAD_MAX_EVALS,
    QUAD_MAX_LEVELS,
)
from .base import InvalidSpecError, QuadShape

# g(t, t - lower, upper - t); both distances are exact
SmoothFactor = Callable[[float, float, float], float]


@dataclass(frozen=True)
class QuadSpec:
    """A weighted integral with declared algebraic endpoint powers.

    The semi-infinite shape is ``int_L^inf e^{-t} (t-L)^alpha g dt``; the
    finite shape is ``int_L^U (t-L)^alpha (U-t)^beta g dt`` with no weight.

    Attributes:
        shape: Integral shape
        lower: Lower limit L
        upper: Upper limit U (``math.inf`` for the semi-infinite shape)
        left_exponent: Power alpha of (t - L)
        right_exponent: Power beta of (U - t), finite shape only
        smooth_factor: Everything else in the integrand
        rel_tol: Relative tolerance
        abs_tol: Absolute tolerance
        max_evals: Evaluation budget
        knot: Offset from L where the semi-infinite shape switches rules
        max_levels: Step-halving limit
    """
    shape: QuadShape
    lower: float
    upper: float
    left_exponent: float
    smooth_factor: SmoothFactor
    right_exponent: float = 0.0
    rel_tol: float = QUAD_REL_TOL
    abs_tol: float = QUAD_ABS_TOL
    max_evals: int = QUAD_MAX_EVALS
    knot: Optional[float] = None
    max_levels: int = QUAD_MAX_LEVELS

    def __post_init__(self):
        if not self.left_exponent > -1.0:
            raise InvalidSpecError(
                f"left exponent must exceed -1, got {self.left_exponent}"
            )
        if not math.isfinite(self.lower):
            raise InvalidSpecError("lower limit must be finite")
        if self.shape is QuadShape.FINITE:
            if not self.right_exponent > -1.0:
                raise InvalidSpecError(
                    f"right exponent must exceed -1, got {self.right_exponent}"
                )
            if not (math.isfinite(self.upper) and self.upper > self.lower):
                raise InvalidSpecError(
                    f"finite shape needs lower < upper < inf, got [{self.lower}, {self.upper}]"
                )
        else:
            if self.upper != math.inf:
                raise InvalidSpecError("semi-infinite shape needs upper = inf")
            if self.right_exponent != 0.0:
                raise InvalidSpecError("semi-infinite shape has no right exponent")
            if self.knot is not None and not self.knot > 0:
                raise InvalidSpecError(f"knot must be positive, got {self.knot}")
        if self.rel_tol <= 0 or self.abs_tol < 0:
            raise InvalidSpecError("tolerances must be positive")
        if self.max_evals <= 0:
            raise InvalidSpecError("max_evals must be positive")

    @property
    def tolerance(self) -> float:
        """Absolute tolerance used for a value of unit magnitude."""
        return max(self.abs_tol, self.rel_tol)


@dataclass(frozen=True)
class QuadOutcome:
    """Computed integral with error estimate."""
    value: float
    abs_err_est: float
    evals: int
    converged: bool

    def __add__(self, other: 'QuadOutcome') -> 'QuadOutcome':
        return QuadOutcome(
            value=self.value + other.value,
            abs_err_est=self.abs_err_est + other.abs_err_est,
            evals=self.evals + other.evals,
            converged=self.converged and other.converged,
        )

    def scaled(self, factor: float) -> 'QuadOutcome':
        """Multiply value and error by a constant factor."""
        return QuadOutcome(
            value=self.value * factor,
            abs_err_est=self.abs_err_est * abs(factor),
            evals=self.evals,
            converged=self.converged,
        )

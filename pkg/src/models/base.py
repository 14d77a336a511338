"""Exceptions and enumerations shared by every layer."""

from enum import Enum
from typing import Optional


class PcfProdError(Exception):
    """Base class for all library errors."""
    pass


class ValidationError(PcfProdError):
    """Raised when user input or model validation fails."""
    pass


class ParameterError(PcfProdError):
    """Raised when a function parameter sits on a forbidden set."""
    pass


class PoleError(ParameterError):
    """Raised when a gamma function or series denominator hits a pole."""
    pass


class DomainError(PcfProdError):
    """Raised when an argument lies outside a function's domain."""
    pass


class RangeError(DomainError):
    """Raised when an argument lies outside the configured accuracy envelope."""
    pass


class DivergenceError(PcfProdError):
    """Raised when a hypergeometric series diverges at unit argument."""
    pass


class RegionError(PcfProdError):
    """Raised when an evaluation point is outside a representation's region."""
    pass


class InvalidSpecError(PcfProdError):
    """Raised for malformed quadrature specifications."""
    pass


class ReportError(PcfProdError):
    """Raised when a table or report cannot be read or written."""
    pass


class ConvergenceError(PcfProdError):
    """Raised when a series or integral fails to meet its tolerance.

    Attributes:
        estimate: Best available value
        abs_err_est: Honest error bound for ``estimate``
    """

    def __init__(
            self,
            message: str,
            estimate: Optional[float] = None,
            abs_err_est: Optional[float] = None
    ):
        super().__init__(message)
        self.estimate = estimate
        self.abs_err_est = abs_err_est


class Representation(Enum):
    """Integral representations and specializations."""
    R41 = "4.1"
    R42 = "4.2"
    R43 = "4.3"
    R44 = "4.4"
    R51 = "5.1"
    KK = "kk"
    ERFC2 = "erfc2"
    DI = "di"
    DNEG_ERFC = "dneg-erfc"

    @classmethod
    def from_tag(cls, tag: str) -> 'Representation':
        """Look up a representation by its command-line tag."""
        for rep in cls:
            if rep.value == tag:
                return rep
        raise ValidationError(f"Unknown representation tag: {tag}")


class IdentityTag(Enum):
    """Inverse Laplace transform identities checked numerically."""
    I31 = "I31"  # Gamma(-nu/2) e^{xp/2} D_nu(sqrt(2xp))
    I32 = "I32"  # Gamma((1-mu)/2) p^{-1/2} e^{yp/2} D_mu(sqrt(2yp))
    I35 = "I35"  # Phi((1-nu)/2; 3/2; p x^2/2), finite support
    I38 = "I38"  # Phi(-nu/2; 1/2; p x^2/2), finite support
    I33 = "I33"  # D_nu D_mu product
    I37 = "I37"  # D_mu * Phi((1-nu)/2; 3/2; .)
    I39 = "I39"  # D_mu * Phi(-nu/2; 1/2; .)


class QuadShape(Enum):
    """Integral shapes handled by the quadrature engine."""
    SEMI_INFINITE = "semi_infinite"
    FINITE = "finite"

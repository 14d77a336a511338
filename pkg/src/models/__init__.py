"""Data models for pcfprod."""

from .base import (
    PcfProdError,
    ValidationError,
    ParameterError,
    PoleError,
    DomainError,
    RangeError,
    DivergenceError,
    RegionError,
    InvalidSpecError,
    ReportError,
    ConvergenceError,
    Representation,
    IdentityTag,
    QuadShape,
)
from .values import (
    SeriesResult,
    HypParams,
    PcfValue,
    EvalPoint,
    TermValue,
    ProductValue,
    OracleValue,
)
from .quadrature import QuadSpec, QuadOutcome
from .report import VerifyRow, VerifyReport, relative_difference

__all__ = [
    # Errors
    'PcfProdError',
    'ValidationError',
    'ParameterError',
    'PoleError',
    'DomainError',
    'RangeError',
    'DivergenceError',
    'RegionError',
    'InvalidSpecError',
    'ReportError',
    'ConvergenceError',
    # Enums
    'Representation',
    'IdentityTag',
    'QuadShape',
    # Values
    'SeriesResult',
    'HypParams',
    'PcfValue',
    'EvalPoint',
    'TermValue',
    'ProductValue',
    'OracleValue',
    # Quadrature
    'QuadSpec',
    'QuadOutcome',
    # Reports
    'VerifyRow',
    'VerifyReport',
    'relative_difference',
]

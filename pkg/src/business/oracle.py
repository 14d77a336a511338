"""Extended-precision reference values.

Products are formed from their factors evaluated independently in mpmath, so
the references share no code with the integral representations. Guaranteed
digits come from repeating the evaluation at a higher precision and
counting the digits on which both runs agree.
"""

import logging
import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import mpmath
import polars as pl

from src.config.constants import (
    ORACLE_COLUMNS,
    ORACLE_DIGITS,
    ORACLE_GUARANTEED_DIGITS_CAP,
    ORACLE_WORKING_DPS,
    PCF_MAX_ABS_NU,
    PCF_MAX_ABS_Z,
)
from src.models import EvalPoint, OracleValue, RangeError, Representation

logger = logging.getLogger(__name__)

# 20 points spanning every representation region; x_signed < 0 gives D_nu(-x)
DEFAULT_ORACLE_POINTS: Tuple[Tuple[float, float, float, float], ...] = (
    (-1.0, -1.0, 0.0, 0.0),
    (-0.5, -0.5, 0.0, 0.0),
    (-0.3, 0.4, 1.0, 2.0),
    (-0.5, -0.5, 1.0, 1.0),
    (-1.0, 0.5, 0.5, 2.0),
    (-1.5, -0.25, 2.0, 0.3),
    (-1.75, -1.5, 5.0, 0.25),
    (-0.1, 0.9, 2.5, 5.0),
    (-1.0, -1.0, 0.0, 1.0),
    (-0.5, -0.5, -1.0, 1.0),
    (-1.5, -0.8, -2.0, 0.5),
    (-0.5, 0.5, -1.0, 2.0),
    (-0.9, 0.9, -0.5, 0.5),
    (-1.75, -1.0, -2.5, 1.0),
    (-0.1, -1.5, -5.0, 2.5),
    (-0.5, 0.0, -0.25, 1.0),
    (0.0, 0.0, 2.0, 2.0),
    (-0.5, -0.5, 2.0, 2.0),
    (-1.0, -1.0, 1.5, 0.5),
    (-1.25, 0.25, -1.0, 0.25),
)

MpFactor = Callable[[], mpmath.mpf]


def _check_envelope(nu: float, z: float) -> None:
    if abs(z) > PCF_MAX_ABS_Z or abs(nu) > PCF_MAX_ABS_NU:
        raise RangeError(
            f"oracle: (nu, z) = ({nu}, {z}) outside |z| <= {PCF_MAX_ABS_Z}, |nu| <= {PCF_MAX_ABS_NU}"
        )


def _agreed_digits(low: mpmath.mpf, high: mpmath.mpf) -> int:
    """Decimal digits on which two evaluations agree."""
    if high == 0:
        return ORACLE_GUARANTEED_DIGITS_CAP if low == 0 else 0
    rel = abs(low - high) / abs(high)
    if rel == 0:
        return ORACLE_GUARANTEED_DIGITS_CAP
    return max(0, min(ORACLE_GUARANTEED_DIGITS_CAP, int(math.floor(-mpmath.log10(rel)))))


def _evaluate_twice(product: MpFactor, dps: int) -> Tuple[mpmath.mpf, mpmath.mpf]:
    with mpmath.workdps(dps):
        low = product()
    with mpmath.workdps(dps + 10):
        high = product()
    return low, high


def _oracle(product: MpFactor, dps: int = ORACLE_WORKING_DPS) -> OracleValue:
    low, high = _evaluate_twice(product, dps)
    return OracleValue(float(high), _agreed_digits(low, high))


def direct_product(nu: float, mu: float, x_signed: float, y: float) -> OracleValue:
    """D_nu(x_signed) D_mu(y) from independently evaluated factors.

    Raises:
        RangeError: Outside the parabolic cylinder envelope
    """
    _check_envelope(nu, x_signed)
    _check_envelope(mu, y)

    def product() -> mpmath.mpf:
        return mpmath.pcfd(mpmath.mpf(nu), mpmath.mpf(x_signed)) * \
            mpmath.pcfd(mpmath.mpf(mu), mpmath.mpf(y))

    return _oracle(product)


def reference_value(rep: Representation, point: EvalPoint) -> OracleValue:
    """Direct-factor reference for any representation.

    (4.3)/(4.4) negate x; (5.1) uses Phi((1-mu)/2; 3/2; y); the
    specializations read only the fields they use.
    """
    nu, mu, x, y = (mpmath.mpf(v) for v in (point.nu, point.mu, point.x, point.y))

    if rep in (Representation.R41, Representation.R42):
        return direct_product(point.nu, point.mu, point.x, point.y)
    if rep in (Representation.R43, Representation.R44):
        return direct_product(point.nu, point.mu, -point.x, point.y)

    _check_envelope(point.nu, point.x)
    factories = {
        Representation.R51: lambda: mpmath.pcfd(nu, x) * mpmath.hyp1f1((1 - mu) / 2, 1.5, y),
        Representation.KK: lambda: mpmath.besselk(0.25, x) * mpmath.besselk(0.25, y),
        Representation.ERFC2: lambda: mpmath.erfc(x) * mpmath.erfc(y),
        Representation.DI: lambda: mpmath.pcfd(nu, x) * mpmath.besseli(0.25, y),
        Representation.DNEG_ERFC: lambda: mpmath.pcfd(nu, -x) * mpmath.erfc(y),
    }
    return _oracle(factories[rep])


def cross_validation_table(
        points: Optional[Iterable[Sequence[float]]] = None,
        digits: int = ORACLE_DIGITS
) -> pl.DataFrame:
    """Table of D_nu(x_signed) D_mu(y) to ``digits`` significant digits.

    Args:
        points: (nu, mu, x_signed, y) tuples; defaults to DEFAULT_ORACLE_POINTS
        digits: Significant digits written to the value column

    Returns:
        DataFrame with columns nu, mu, x_signed, y, value_30digits
    """
    points = list(points) if points is not None else list(DEFAULT_ORACLE_POINTS)
    rows: List[dict] = []
    with mpmath.workdps(digits + 15):
        for nu, mu, x_signed, y in points:
            _check_envelope(nu, x_signed)
            _check_envelope(mu, y)
            value = mpmath.pcfd(mpmath.mpf(nu), mpmath.mpf(x_signed)) * \
                mpmath.pcfd(mpmath.mpf(mu), mpmath.mpf(y))
            rows.append(dict(zip(ORACLE_COLUMNS, (
                float(nu), float(mu), float(x_signed), float(y),
                mpmath.nstr(value, digits, min_fixed=-1, max_fixed=-1),
            ))))
    logger.info(f"Computed {len(rows)} oracle points to {digits} digits")
    return pl.DataFrame(rows, schema={
        'nu': pl.Float64, 'mu': pl.Float64, 'x_signed': pl.Float64,
        'y': pl.Float64, 'value_30digits': pl.Utf8,
    })

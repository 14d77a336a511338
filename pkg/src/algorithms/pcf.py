"""Parabolic cylinder function D_nu(z) for real order and argument."""

import logging
import math
from typing import Optional, Tuple

from src.config.constants import PCF_MAX_ABS_Z, PCF_MAX_ABS_NU
from src.config.settings import Settings
from src.models import PcfValue, RangeError
from . import kernels
from .specfun import DEFAULT_SETTINGS, _raise_for_status, kummer_phi, rgamma

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)


def _check_envelope(nu: float, z: float) -> None:
    if abs(z) > PCF_MAX_ABS_Z or abs(nu) > PCF_MAX_ABS_NU:
        raise RangeError(
            f"pcf_D: (nu, z) = ({nu}, {z}) outside |z| <= {PCF_MAX_ABS_Z}, |nu| <= {PCF_MAX_ABS_NU}"
        )


def pcf_D(nu: float, z: float, settings: Optional[Settings] = None) -> PcfValue:
    """D_nu(z) from its two-Kummer definition.

    The two Kummer terms are combined with an error-free sum; for large
    positive z they nearly cancel and abs_err_est grows accordingly.

    Raises:
        RangeError: Outside |z| <= 30, |nu| <= 10
    """
    _check_envelope(nu, z)
    settings = settings or DEFAULT_SETTINGS
    value, err, _, status = kernels.pcf_d(
        float(nu), float(z), settings.series_tol, settings.pcf_series_max_terms
    )
    _raise_for_status(status, "pcf_D", value, err)
    if abs(value) > 0 and err > 1e-10 * abs(value):
        logger.debug(f"pcf_D({nu}, {z}): cancellation leaves relative error {err / abs(value):.1e}")
    return PcfValue(value, err)


def pcf_sum_residuals(
        nu: float,
        z: float,
        settings: Optional[Settings] = None
) -> Tuple[float, float]:
    """Residuals of the sum and difference identities for D_nu(z) +- D_nu(-z).

    Returns:
        (sum residual, difference residual)
    """
    _check_envelope(nu, z)
    settings = settings or DEFAULT_SETTINGS
    plus = pcf_D(nu, z, settings).value
    minus = pcf_D(nu, -z, settings).value
    zz = 0.5 * z * z
    damp = math.exp(-0.25 * z * z)

    even = kummer_phi(-0.5 * nu, 0.5, zz, settings, settings.pcf_series_max_terms).value
    odd = kummer_phi(0.5 * (1.0 - nu), 1.5, zz, settings, settings.pcf_series_max_terms).value

    sum_rhs = 2.0 ** (0.5 * (nu + 2.0)) * SQRT_PI * rgamma(0.5 * (1.0 - nu)) * damp * even
    diff_rhs = z * 2.0 ** (0.5 * (nu + 3.0)) * SQRT_PI * rgamma(-0.5 * nu) * damp * odd
    return (minus + plus) - sum_rhs, (minus - plus) - diff_rhs

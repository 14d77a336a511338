"""General utility functions."""

import itertools
import logging
from typing import Any, Dict, Iterator, List

import numpy as np

from src.config.constants import FLOAT_FORMAT
from src.models import EvalPoint

logger = logging.getLogger(__name__)


def grid_values(start: float, stop: float, count: int) -> List[float]:
    """Evenly spaced values including both ends.

    Args:
        start: First value
        stop: Last value
        count: Number of values

    Returns:
        List of floats
    """
    if count == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, count)]


def grid_points(
        nu: List[float],
        mu: List[float],
        x: List[float],
        y: List[float]
) -> Iterator[EvalPoint]:
    """Cartesian product of the four axes in row-major (nu, mu, x, y) order."""
    for values in itertools.product(nu, mu, x, y):
        yield EvalPoint(*values)


def format_float(value: float) -> str:
    """Format with 17 significant digits so a float survives a text round trip."""
    return FLOAT_FORMAT.format(value)


def format_product(result: Dict[str, Any]) -> str:
    """Human-readable block for a single evaluation.

    Args:
        result: ``ProductValue.to_dict()`` output

    Returns:
        Multi-line string
    """
    lines = [
        f"value        = {format_float(result['value'])}",
        f"abs_err_est  = {result['abs_err_est']:.3e}",
        f"rep          = {result['representation']}",
        f"swapped      = {str(result['swapped']).lower()}",
    ]
    return "\n".join(lines)


"""Input validation utilities."""

import math
from typing import Callable, Dict, Optional, Tuple, Union

from src.models import EvalPoint, Representation, RegionError, ValidationError

RegionTest = Callable[[EvalPoint], bool]

# Validity brackets of each representation, checked after any symmetric swap
REGIONS: Dict[Representation, Tuple[RegionTest, str]] = {
    Representation.R41: (
        lambda p: p.nu < 0 and p.mu < 1 and p.x >= 0 and p.y >= 0,
        "nu < 0, mu < 1, x >= 0, y >= 0",
    ),
    Representation.R42: (
        lambda p: p.nu < 0 and p.mu < 1 and p.x >= 0 and p.y >= 0,
        "nu < 0, mu < 1, x >= 0, y >= 0",
    ),
    Representation.R43: (
        lambda p: -2 < p.nu < 0 and p.mu < 0 and p.x >= 0 and p.y > 0,
        "-2 < nu < 0, mu < 0, x >= 0, y > 0",
    ),
    Representation.R44: (
        lambda p: -1 < p.nu < 0 and p.mu < 1 and p.x > 0 and p.y > 0,
        "-1 < nu < 0, mu < 1, x > 0, y > 0",
    ),
    Representation.R51: (
        lambda p: p.nu < 0 and -2 < p.mu < 1 and p.x > 0 and p.y > 0,
        "nu < 0, -2 < mu < 1, x > 0, y > 0",
    ),
    Representation.KK: (
        lambda p: p.x > 0 and p.y > 0,
        "x > 0, y > 0",
    ),
    Representation.ERFC2: (
        lambda p: p.x >= 0 and p.y >= 0,
        "x >= 0, y >= 0",
    ),
    Representation.DI: (
        lambda p: p.nu < 0 and p.x > 0 and p.y > 0,
        "nu < 0, x > 0, y > 0",
    ),
    Representation.DNEG_ERFC: (
        lambda p: -2 < p.nu < 0 and p.x >= 0 and p.y > 0,
        "-2 < nu < 0, x >= 0, y > 0",
    ),
}


class Validator:
    """Collection of validation methods."""

    @staticmethod
    def in_region(rep: Representation, point: EvalPoint) -> bool:
        """Whether a point lies inside a representation's validity region."""
        test, _ = REGIONS[rep]
        return bool(test(point))

    @staticmethod
    def check_region(rep: Representation, point: EvalPoint) -> EvalPoint:
        """Validate a point against a representation's region.

        Args:
            rep: Representation about to be evaluated
            point: Evaluation point

        Returns:
            The unchanged point

        Raises:
            RegionError: If the point is outside the region
        """
        test, description = REGIONS[rep]
        if not test(point):
            raise RegionError(
                f"({point.nu}, {point.mu}, {point.x}, {point.y}) outside the "
                f"region of {rep.value}: {description}"
            )
        return point

    @staticmethod
    def validate_float(value: Union[int, float, str], field_name: str) -> float:
        """Validate that a value parses to a finite float.

        Raises:
            ValidationError: If validation fails
        """
        try:
            num = float(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{field_name} must be a valid number")
        if not math.isfinite(num):
            raise ValidationError(f"{field_name} must be finite")
        return num

    @staticmethod
    def validate_positive_number(value: Union[int, float, str], field_name: str) -> float:
        """Validate that a value is a positive finite number.

        Raises:
            ValidationError: If validation fails
        """
        num = Validator.validate_float(value, field_name)
        if num <= 0:
            raise ValidationError(f"{field_name} must be greater than 0")
        return num

    @staticmethod
    def validate_integer(
            value: Union[int, str],
            field_name: str,
            min_value: Optional[int] = None,
            max_value: Optional[int] = None
    ) -> int:
        """Validate that a value is an integer within range.

        Args:
            value: Value to validate
            field_name: Name of field for error messages
            min_value: Minimum allowed value
            max_value: Maximum allowed value

        Returns:
            Validated integer

        Raises:
            ValidationError: If validation fails
        """
        try:
            num = int(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{field_name} must be a valid integer")
        if min_value is not None and num < min_value:
            raise ValidationError(f"{field_name} must be at least {min_value}")
        if max_value is not None and num > max_value:
            raise ValidationError(f"{field_name} must be at most {max_value}")
        return num

    @staticmethod
    def validate_range(spec: str, field_name: str) -> Tuple[float, float, int]:
        """Parse a ``start:stop:count`` range, or a single value.

        Returns:
            (start, stop, count) with count >= 1; count 1 requires start == stop

        Raises:
            ValidationError: If the text is malformed
        """
        parts = str(spec).split(':')
        if len(parts) == 1:
            value = Validator.validate_float(parts[0], field_name)
            return value, value, 1
        if len(parts) != 3:
            raise ValidationError(
                f"{field_name} must be a number or start:stop:count, got {spec!r}"
            )
        start = Validator.validate_float(parts[0], f"{field_name} start")
        stop = Validator.validate_float(parts[1], f"{field_name} stop")
        count = Validator.validate_integer(parts[2], f"{field_name} count", min_value=1)
        if count == 1 and start != stop:
            raise ValidationError(f"{field_name}: a single-point range needs start == stop")
        return start, stop, count

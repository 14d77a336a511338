"""Tests for validators and helpers."""

import pytest

from src.models import EvalPoint, RegionError, Representation, ValidationError
from src.utils.helpers import format_float, format_product, grid_points, grid_values
from src.utils.validators import Validator


class TestValidator:

    @pytest.mark.parametrize("rep, point, inside", [
        (Representation.R41, (-0.5, 0.9, 0.0, 0.0), True),
        (Representation.R41, (0.0, 0.5, 1.0, 1.0), False),
        (Representation.R43, (-1.99, -0.1, 0.0, 0.5), True),
        (Representation.R43, (-2.0, -0.1, 0.0, 0.5), False),
        (Representation.R44, (-0.5, 0.5, 1.0, 1.0), True),
        (Representation.R44, (-1.0, 0.5, 1.0, 1.0), False),
        (Representation.R51, (-0.5, -1.9, 1.0, 1.0), True),
        (Representation.R51, (-0.5, 1.0, 1.0, 1.0), False),
    ])
    def test_in_region(self, rep, point, inside):
        assert Validator.in_region(rep, EvalPoint(*point)) is inside

    def test_check_region_names_bracket(self):
        with pytest.raises(RegionError, match="mu < 1"):
            Validator.check_region(Representation.R41, EvalPoint(-0.5, 1.0, 1.0, 1.0))

    def test_validate_float(self):
        assert Validator.validate_float("-1.25", "nu") == -1.25
        with pytest.raises(ValidationError):
            Validator.validate_float("abc", "nu")
        with pytest.raises(ValidationError):
            Validator.validate_float("inf", "nu")

    def test_validate_positive_number(self):
        assert Validator.validate_positive_number("1e-8", "tol") == 1e-8
        with pytest.raises(ValidationError):
            Validator.validate_positive_number(0, "tol")

    def test_validate_integer(self):
        assert Validator.validate_integer("4", "workers", min_value=1) == 4
        with pytest.raises(ValidationError):
            Validator.validate_integer(0, "workers", min_value=1)
        with pytest.raises(ValidationError):
            Validator.validate_integer("two", "workers")

    @pytest.mark.parametrize("text, expected", [
        ("0.5", (0.5, 0.5, 1)),
        ("-1:0:3", (-1.0, 0.0, 3)),
        ("2:2:1", (2.0, 2.0, 1)),
    ])
    def test_validate_range(self, text, expected):
        assert Validator.validate_range(text, "x") == expected

    @pytest.mark.parametrize("text", ["1:2", "0:1:0", "0:1:1", "a:1:3"])
    def test_validate_range_rejects(self, text):
        with pytest.raises(ValidationError):
            Validator.validate_range(text, "x")


class TestHelpers:

    def test_grid_values_include_ends(self):
        assert grid_values(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert grid_values(2.0, 2.0, 1) == [2.0]

    def test_grid_points_order(self):
        points = list(grid_points([-1.0, -0.5], [0.0], [0.0, 1.0], [2.0]))
        assert points == [
            EvalPoint(-1.0, 0.0, 0.0, 2.0),
            EvalPoint(-1.0, 0.0, 1.0, 2.0),
            EvalPoint(-0.5, 0.0, 0.0, 2.0),
            EvalPoint(-0.5, 0.0, 1.0, 2.0),
        ]

    def test_format_float_round_trips(self):
        value = 0.1 + 0.2
        assert float(format_float(value)) == value

    def test_format_product(self):
        text = format_product({'value': 0.5, 'abs_err_est': 1e-12,
                               'representation': '4.1', 'swapped': True})
        assert "rep          = 4.1" in text
        assert "swapped      = true" in text


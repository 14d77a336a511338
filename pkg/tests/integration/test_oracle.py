"""Tests for the extended-precision reference values."""

import math

import mpmath
import polars as pl
import pytest

from src.config.constants import ORACLE_COLUMNS
from src.data.repository import DataRepository
from src.models import EvalPoint, RangeError, Representation
from src.business import products
from src.business.oracle import (
    DEFAULT_ORACLE_POINTS,
    cross_validation_table,
    direct_product,
    reference_value,
)


class TestDirectProduct:

    def test_exponential_case(self):
        # D_0(z) = e^{-z^2/4}
        result = direct_product(0.0, 0.0, 2.0, 2.0)
        assert result.value == pytest.approx(math.exp(-2.0), rel=1e-15)
        assert result.guaranteed_digits >= 15

    def test_origin(self):
        assert direct_product(-1.0, -1.0, 0.0, 0.0).value == pytest.approx(0.5 * math.pi, rel=1e-15)

    def test_symmetric(self):
        assert direct_product(-0.3, 0.4, 1.0, 2.0).value == direct_product(0.4, -0.3, 2.0, 1.0).value

    def test_negative_argument(self):
        expected = float(mpmath.pcfd(-0.5, -1.0) * mpmath.pcfd(-0.5, 1.0))
        assert direct_product(-0.5, -0.5, -1.0, 1.0).value == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("args", [(-0.5, -0.5, 31.0, 1.0), (-12.0, -0.5, 1.0, 1.0)])
    def test_envelope(self, args):
        with pytest.raises(RangeError):
            direct_product(*args)


class TestReferenceValue:

    def test_negated_argument_forms(self):
        point = EvalPoint(-0.5, -0.5, 1.0, 1.0)
        for rep in (Representation.R43, Representation.R44):
            assert reference_value(rep, point).value == direct_product(-0.5, -0.5, -1.0, 1.0).value

    def test_specializations(self):
        point = EvalPoint(-0.5, 0.0, 0.5, 1.0)
        assert reference_value(Representation.ERFC2, point).value == \
            pytest.approx(math.erfc(0.5) * math.erfc(1.0), rel=1e-14)
        assert reference_value(Representation.KK, point).value == \
            pytest.approx(float(mpmath.besselk(0.25, 0.5) * mpmath.besselk(0.25, 1.0)), rel=1e-14)

    def test_kummer_form(self):
        point = EvalPoint(-0.5, -1.0, 1.0, 2.0)
        expected = float(mpmath.pcfd(-0.5, 1.0) * mpmath.hyp1f1(1.0, 1.5, 2.0))
        assert reference_value(Representation.R51, point).value == pytest.approx(expected, rel=1e-14)


class TestCrossValidationTable:

    def test_shape(self):
        frame = cross_validation_table()
        assert frame.columns == list(ORACLE_COLUMNS)
        assert frame.height == len(DEFAULT_ORACLE_POINTS) == 20
        assert frame.schema['value_30digits'] == pl.Utf8

    def test_digits(self):
        frame = cross_validation_table(points=[(0.0, 0.0, 2.0, 2.0)])
        text = frame['value_30digits'][0]
        mantissa = text.split('e')[0].replace('.', '').replace('-', '').lstrip('0')
        assert 25 <= len(mantissa) <= 30
        with mpmath.workdps(40):
            assert abs(mpmath.mpf(text) - mpmath.exp(-2)) < mpmath.mpf(10) ** -30

    def test_rejects_points_outside_envelope(self):
        with pytest.raises(RangeError):
            cross_validation_table(points=[(0.0, 0.0, 40.0, 1.0)])


class TestCommittedTable:

    @pytest.fixture(scope="class")
    def table(self):
        frame = DataRepository().load_oracle_table()
        assert frame is not None
        return frame

    def test_covers_default_points(self, table):
        points = list(zip(table['nu'], table['mu'], table['x_signed'], table['y']))
        assert points == list(DEFAULT_ORACLE_POINTS)

    def test_matches_direct_product(self, table):
        for nu, mu, x, y, text in table.iter_rows():
            assert direct_product(nu, mu, x, y).value == pytest.approx(float(text), rel=1e-14)

    def test_thirty_digits(self, table):
        with mpmath.workdps(45):
            for nu, mu, x, y, text in table.iter_rows():
                exact = mpmath.pcfd(nu, x) * mpmath.pcfd(mu, y)
                assert abs(mpmath.mpf(text) / exact - 1) < mpmath.mpf(10) ** -28

    def test_integral_forms_reproduce_table(self, table):
        checked = 0
        for nu, mu, x, y, text in table.iter_rows():
            rep = "4.1" if x >= 0 else "dneg"
            point = EvalPoint(nu, mu, abs(x), y)
            if not products.in_region(rep, point):
                continue
            assert products.evaluate(rep, point).value == pytest.approx(float(text), rel=1e-8)
            checked += 1
        assert checked >= 15

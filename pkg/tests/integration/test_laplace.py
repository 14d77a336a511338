"""Tests for the inverse Laplace transform checks."""

import pytest

from src.models import EvalPoint, IdentityTag, RegionError, ValidationError
from src.business.laplace import BRACKETS, check_bracket, laplace_pair, laplace_residual
from tests.fixtures.test_data import LAPLACE_P_VALUES, LAPLACE_TUPLES

RESIDUAL_TOL = 1e-8


@pytest.mark.parametrize("identity", list(IdentityTag))
@pytest.mark.parametrize("p", LAPLACE_P_VALUES)
def test_residuals(identity, p):
    for params in LAPLACE_TUPLES:
        assert laplace_residual(identity, p, EvalPoint(*params)) <= RESIDUAL_TOL


@pytest.mark.parametrize("identity, p, params, bound", [
    (IdentityTag.I31, 1.0, (-0.5, -0.5, 0.5, 1.0), 1e-9),
    (IdentityTag.I33, 1.0, (-0.5, -0.5, 1.0, 1.0), 1e-9),
    (IdentityTag.I33, 2.0, (-0.5, -0.5, 1.0, 1.0), 1e-8),
])
def test_reference_residuals(identity, p, params, bound):
    assert laplace_residual(identity, p, EvalPoint(*params)) <= bound


def test_pair_reports_both_sides():
    pair = laplace_pair(IdentityTag.I31, 1.0, EvalPoint(-0.5, -0.5, 1.0, 1.0))
    assert pair.identity is IdentityTag.I31
    assert pair.lhs == pytest.approx(pair.rhs, rel=RESIDUAL_TOL)
    assert pair.rhs_err >= 0.0
    assert pair.evals > 0


def test_every_identity_has_a_bracket():
    assert set(BRACKETS) == set(IdentityTag)


@pytest.mark.parametrize("p", [0.0, -1.0])
def test_p_must_be_positive(p):
    with pytest.raises(ValidationError):
        laplace_pair(IdentityTag.I33, p, EvalPoint(-0.5, -0.5, 1.0, 1.0))


@pytest.mark.parametrize("identity, params", [
    (IdentityTag.I31, (0.5, -0.5, 1.0, 1.0)),
    (IdentityTag.I32, (-0.5, 1.0, 1.0, 1.0)),
    (IdentityTag.I35, (-2.0, -0.5, 1.0, 1.0)),
    (IdentityTag.I38, (-1.0, -0.5, 1.0, 1.0)),
    (IdentityTag.I33, (-0.5, -0.5, 0.0, 1.0)),
    (IdentityTag.I37, (-0.5, 0.5, 1.0, 1.0)),
    (IdentityTag.I39, (-0.5, -0.5, 1.0, 0.0)),
])
def test_bracket_violations(identity, params):
    with pytest.raises(RegionError):
        check_bracket(identity, EvalPoint(*params))
    with pytest.raises(RegionError):
        laplace_pair(identity, 1.0, EvalPoint(*params))

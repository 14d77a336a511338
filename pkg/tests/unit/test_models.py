"""Tests for value objects, reports and settings."""

import math

import pytest

from src.config.settings import Settings, SettingsManager
from src.models import (
    ConvergenceError,
    EvalPoint,
    IdentityTag,
    PcfProdError,
    PoleError,
    ParameterError,
    ProductValue,
    RangeError,
    DomainError,
    Representation,
    SeriesResult,
    TermValue,
    ValidationError,
    VerifyReport,
    VerifyRow,
    relative_difference,
)


class TestEvalPoint:

    def test_swapped(self):
        point = EvalPoint(-0.5, 0.3, 1.0, 2.0)
        assert point.swapped() == EvalPoint(0.3, -0.5, 2.0, 1.0)
        assert point.swapped().swapped() == point

    @pytest.mark.parametrize("bad", [math.nan, math.inf, "1.0"])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValidationError):
            EvalPoint(-0.5, -0.5, bad, 1.0)

    def test_to_dict(self):
        assert EvalPoint(-1.0, 0.5, 0.0, 2.0).to_dict() == \
            {'nu': -1.0, 'mu': 0.5, 'x': 0.0, 'y': 2.0}


class TestValues:

    def test_series_result_rejects_negative_error(self):
        with pytest.raises(ValidationError):
            SeriesResult(1.0, -1e-16, 3)

    def test_term_value(self):
        term = TermValue("tail", -2.0, 0.5, 1e-12)
        assert term.value == -1.0
        assert term.abs_err_est == 2e-12

    def test_product_to_dict(self):
        result = ProductValue(0.25, 1e-13, Representation.R44, swapped=False, evals=120)
        assert result.to_dict() == {
            'value': 0.25,
            'abs_err_est': 1e-13,
            'representation': '4.4',
            'swapped': False,
            'evals': 120,
        }


class TestEnums:

    @pytest.mark.parametrize("rep", list(Representation))
    def test_from_tag(self, rep):
        assert Representation.from_tag(rep.value) is rep

    def test_unknown_tag(self):
        with pytest.raises(ValidationError):
            Representation.from_tag("dneg")

    def test_seven_identities(self):
        assert len(IdentityTag) == 7


class TestErrors:

    def test_hierarchy(self):
        assert issubclass(PoleError, ParameterError)
        assert issubclass(RangeError, DomainError)
        for exc in (ValidationError, ParameterError, DomainError, ConvergenceError):
            assert issubclass(exc, PcfProdError)

    def test_convergence_error_carries_estimate(self):
        exc = ConvergenceError("budget", estimate=1.5, abs_err_est=0.1)
        assert exc.estimate == 1.5
        assert exc.abs_err_est == 0.1


class TestRelativeDifference:

    def test_relative(self):
        assert relative_difference(1.0 + 1e-9, 1.0) == pytest.approx(1e-9)

    def test_absolute_floor(self):
        assert relative_difference(1e-13, 0.0) == 0.0

    def test_zero_reference(self):
        assert relative_difference(1e-6, 0.0) == math.inf

    def test_non_finite(self):
        assert relative_difference(math.nan, 1.0) == math.inf


def _row(passed, rel_diff=0.0, suite="products"):
    return VerifyRow(suite, "4.1", -0.5, -0.5, 1.0, 1.0, 1.0, 0.0, 1.0, rel_diff, passed)


class TestVerifyReport:

    def test_summary(self):
        report = VerifyReport(threshold=1e-8, suites=["products"])
        report.extend([_row(True, 1e-10), _row(False, 3e-7), _row(True)])
        assert report.summary() == {'total': 3, 'passed': 2, 'failed': 1, 'max_rel_diff': 3e-7}
        assert not report.all_passed
        assert len(report.failures()) == 1
        assert report.failures("identities") == []

    def test_empty_report_passes(self):
        report = VerifyReport(threshold=1e-8)
        assert report.all_passed
        assert report.max_rel_diff == 0.0

    def test_json_has_no_infinities(self):
        report = VerifyReport(threshold=1e-8)
        report.add(_row(False, math.inf))
        data = report.to_dict()
        assert data['rows'][0]['rel_diff'] == 'inf'
        assert data['rows'][0]['pass'] is False
        assert data['rows'][0]['rep'] == '4.1'
        assert set(data) == {'header', 'summary', 'rows'}


class TestSettings:

    def test_round_trip(self):
        settings = Settings(quad_max_evals=5000, workers=3)
        assert Settings.from_dict(settings.to_dict()) == settings

    def test_from_dict_ignores_unknown_keys(self):
        assert Settings.from_dict({'workers': 2, 'colour': 'red'}).workers == 2

    def test_env_overrides(self):
        settings = Settings().with_env_overrides(
            {'PCFPROD_MAX_EVALS': '1000', 'PCFPROD_LOG_LEVEL': 'debug'}
        )
        assert settings.quad_max_evals == 1000
        assert settings.log_level == 'DEBUG'

    def test_env_override_must_be_positive(self):
        with pytest.raises(ValueError):
            Settings().with_env_overrides({'PCFPROD_MAX_EVALS': '0'})

    def test_manager_persists(self, workspace):
        path = workspace / "settings.json"
        manager = SettingsManager(path)
        manager.update(verify_tol=1e-9)
        manager.save_settings()
        assert SettingsManager(path).settings.verify_tol == 1e-9

    def test_manager_rejects_unknown(self, workspace):
        with pytest.raises(KeyError):
            SettingsManager(workspace / "settings.json").update(colour='red')

    def test_manager_falls_back_on_bad_file(self, workspace):
        path = workspace / "settings.json"
        path.write_text("{not json", encoding='utf-8')
        assert SettingsManager(path).settings == Settings()

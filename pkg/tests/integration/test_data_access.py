"""Integration tests for tables, reports and the oracle table on disk."""

import json
import math

import polars as pl
import pytest

from src.config.constants import TABLE_COLUMNS
from src.data.repository import DataRepository
from src.models import ReportError, VerifyReport, VerifyRow


def _rows():
    return [
        {'rep': '4.1', 'nu': -0.5, 'mu': -0.5, 'x': 0.1, 'y': 1.0 / 3.0,
         'value': 0.1 + 0.2, 'abs_err_est': 2.220446049250313e-16, 'status': 'ok'},
        {'rep': '4.1', 'nu': -0.5, 'mu': 0.5, 'x': 0.0, 'y': 1.0,
         'value': None, 'abs_err_est': None, 'status': 'skipped'},
        {'rep': '4.1', 'nu': -0.5, 'mu': 0.9, 'x': 5.0, 'y': 5.0,
         'value': 1.2345678901234567e-11, 'abs_err_est': 3e-19, 'status': 'not_converged'},
    ]


class TestTables:

    def test_csv_round_trip_is_exact(self, repository):
        path = repository.save_table(_rows(), "sweep.csv")
        frame = repository.load_table(path)
        assert tuple(frame.columns) == TABLE_COLUMNS
        assert frame['value'].to_list() == [0.1 + 0.2, None, 1.2345678901234567e-11]
        assert frame['y'][0] == 1.0 / 3.0
        assert frame['status'].to_list() == ['ok', 'skipped', 'not_converged']

    def test_json_round_trip(self, repository):
        path = repository.save_table(_rows(), "sweep.json", fmt="json")
        data = json.loads(path.read_text(encoding='utf-8'))
        assert [row['status'] for row in data] == ['ok', 'skipped', 'not_converged']
        assert repository.load_table(path)['abs_err_est'][2] == 3e-19

    def test_relative_paths_use_base(self, repository, workspace):
        repository.save_table(_rows(), "nested/sweep.csv")
        assert (workspace / "nested" / "sweep.csv").exists()

    def test_wrong_columns(self, repository, workspace):
        pl.DataFrame({'a': [1.0]}).write_csv(workspace / "bad.csv")
        with pytest.raises(ReportError):
            repository.load_table("bad.csv")

    def test_missing_table(self, repository):
        with pytest.raises(ReportError):
            repository.load_table("missing.json")

    def test_header_checked_before_types(self, repository, workspace):
        header = ",".join(TABLE_COLUMNS)
        (workspace / "renamed.csv").write_text(
            header.replace("value", "val", 1) + "\n4.1,-0.5,-0.5,1,1,0.5,1e-12,ok\n", encoding='utf-8')
        with pytest.raises(ReportError, match="expected columns"):
            repository.load_table("renamed.csv")

    def test_malformed_cell(self, repository, workspace):
        (workspace / "cell.csv").write_text(
            ",".join(TABLE_COLUMNS) + "\n4.1,-0.5,-0.5,one,1,0.5,1e-12,ok\n", encoding='utf-8')
        with pytest.raises(ReportError):
            repository.load_table("cell.csv")

    def test_json_with_other_keys(self, repository, workspace):
        (workspace / "other.json").write_text(json.dumps([{'a': 1.0}]), encoding='utf-8')
        with pytest.raises(ReportError):
            repository.load_table("other.json")


class TestReports:

    def test_report_round_trip(self, repository):
        report = VerifyReport(threshold=1e-8, suites=['products'])
        report.add(VerifyRow('products', '4.2', -0.5, -0.5, 1.0, 1.0,
                             0.25, 1e-14, 0.25, 0.0, True))
        report.add(VerifyRow('products', '4.3', -1.5, -0.5, 1.0, 1.0,
                             math.nan, math.nan, math.nan, math.inf, False, note='RegionError'))
        path = repository.save_report(report, "report.json")

        data = repository.load_report(path)
        assert data['summary'] == {'total': 2, 'passed': 1, 'failed': 1, 'max_rel_diff': 0.0}
        assert data['rows'][1]['rel_diff'] == 'inf'
        assert data['header']['threshold'] == 1e-8

    def test_incomplete_report(self, repository, workspace):
        (workspace / "partial.json").write_text(json.dumps({'rows': []}), encoding='utf-8')
        with pytest.raises(ReportError):
            repository.load_report("partial.json")

    def test_invalid_json(self, repository, workspace):
        (workspace / "broken.json").write_text("{", encoding='utf-8')
        with pytest.raises(ReportError):
            repository.load_report("broken.json")


class TestOracleTable:

    def test_missing_table_is_none(self, repository):
        assert repository.load_oracle_table("absent.csv") is None

    def test_digits_survive(self, repository):
        text = "1.35335283236612691893999494972e-1"
        frame = pl.DataFrame({'nu': [0.0], 'mu': [0.0], 'x_signed': [2.0], 'y': [2.0],
                              'value_30digits': [text]})
        path = repository.save_oracle_table(frame, "oracle.csv")
        loaded = repository.load_oracle_table(path)
        assert loaded['value_30digits'][0] == text
        assert loaded['x_signed'][0] == 2.0

    def test_committed_table(self):
        frame = DataRepository().load_oracle_table()
        assert frame.height == 20
        assert frame['value_30digits'][0] == "1.57079632679489661923132169164e+0"

    def test_oracle_table_with_other_columns(self, repository, workspace):
        pl.DataFrame({'nu': [0.0], 'value': ["1.0"]}).write_csv(workspace / "odd.csv")
        with pytest.raises(ReportError):
            repository.load_oracle_table("odd.csv")

"""Command-line front end.

Subcommands:
    eval          one product at one point
    table         grid sweep written as CSV or JSON
    verify        verification suites with a JSON report
    oracle-table  regenerate the 30-digit cross-validation table

Exit codes: 0 ok, 1 usage, 2 region, 3 non-convergence, 4 I/O,
5 verification failure.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.config.constants import (
    APP_DESCRIPTION,
    APP_NAME,
    APP_VERSION,
    DISPATCH_TAG,
    EXIT_IO,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    EXIT_REGION,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    ORACLE_DIGITS,
    OUTPUT_FORMATS,
    REP_TAGS,
    TABLE_FORMATS,
    VERIFY_SUITES,
)
from src.config.logging_config import setup_logging
from src.config.paths import PathConfig
from src.config.settings import Settings, SettingsManager
from src.models import (
    ConvergenceError,
    DomainError,
    EvalPoint,
    ParameterError,
    PcfProdError,
    RegionError,
    ReportError,
    ValidationError,
)
from src.business import products
from src.business.oracle import cross_validation_table
from src.business.verification import run_verification
from src.data.repository import DataRepository
from src.utils.helpers import format_product, grid_points, grid_values
from src.utils.validators import Validator

logger = logging.getLogger(__name__)

# fields each tag reads; the rest default to 0
TAG_FIELDS: Dict[str, Tuple[str, ...]] = {
    "kk": ("x", "y"),
    "erfc2": ("x", "y"),
    "di": ("nu", "x", "y"),
    "dneg-erfc": ("nu", "x", "y"),
}
ALL_FIELDS = ("nu", "mu", "x", "y")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors raise instead of exiting with status 2."""

    def error(self, message: str):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    parser = CliParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument('--version', action='version', version=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument('--log-level', default=None,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'))
    parser.add_argument('--log-file', action=argparse.BooleanOptionalAction, default=False,
                        help="also write a rotating log file")
    parser.add_argument('--settings', type=Path, default=None, help="settings JSON file")

    sub = parser.add_subparsers(dest='command', required=True)

    p_eval = sub.add_parser('eval', help="evaluate one product")
    p_eval.add_argument('--rep', required=True, choices=REP_TAGS)
    for name in ALL_FIELDS:
        p_eval.add_argument(f'--{name}', type=str, default=None)
    p_eval.add_argument('--format', choices=OUTPUT_FORMATS, default='text')

    p_table = sub.add_parser('table', help="evaluate a grid and write a table")
    p_table.add_argument('--rep', required=True, choices=REP_TAGS)
    for name in ALL_FIELDS:
        p_table.add_argument(f'--{name}', type=str, default="0",
                             help="value or start:stop:count")
    p_table.add_argument('--out', type=Path, required=True)
    p_table.add_argument('--format', choices=TABLE_FORMATS, default=None,
                         help="defaults to the output suffix, else csv")
    p_table.add_argument('--workers', type=int, default=None)

    p_verify = sub.add_parser('verify', help="run verification suites")
    p_verify.add_argument('--suite', choices=VERIFY_SUITES, default='all')
    p_verify.add_argument('--tol', type=str, default=None)
    p_verify.add_argument('--out', type=Path, default=None)
    p_verify.add_argument('--workers', type=int, default=None)

    p_oracle = sub.add_parser('oracle-table', help="write the 30-digit oracle table")
    p_oracle.add_argument('--out', type=Path, default=None)
    p_oracle.add_argument('--digits', type=int, default=ORACLE_DIGITS)

    return parser


def _point_from_args(rep: str, args: argparse.Namespace) -> EvalPoint:
    fields = TAG_FIELDS.get(rep, ALL_FIELDS)
    values: Dict[str, float] = {}
    for name in ALL_FIELDS:
        raw = getattr(args, name)
        if raw is None:
            if name in fields:
                raise ValidationError(f"--{name} is required for --rep {rep}")
            values[name] = 0.0
        else:
            values[name] = Validator.validate_float(raw, name)
    return EvalPoint(**values)


def _workers(args: argparse.Namespace, settings: Settings) -> int:
    workers = args.workers if args.workers is not None else settings.workers
    return Validator.validate_integer(workers, "workers", min_value=1)


# ==================== eval ====================

def cmd_eval(args: argparse.Namespace, settings: Settings) -> int:
    """Evaluate one product and print it."""
    point = _point_from_args(args.rep, args)
    result = products.evaluate(args.rep, point, settings)
    if args.format == 'json':
        print(json.dumps(result.to_dict()))
    else:
        print(format_product(result.to_dict()))
    return EXIT_OK


# ==================== table ====================

def _table_row(job: Tuple[str, Tuple[float, float, float, float], Settings]) -> Dict[str, Any]:
    """One table row; points outside the region are skipped."""
    rep, values, settings = job
    point = EvalPoint(*values)
    row: Dict[str, Any] = {'rep': rep, **point.to_dict(),
                           'value': None, 'abs_err_est': None, 'status': 'ok'}
    if not products.in_region(rep, point):
        row['status'] = 'skipped'
        return row
    try:
        result = products.evaluate(rep, point, settings)
    except ConvergenceError as exc:
        logger.warning(f"{rep} at {point}: {exc}")
        row.update(value=exc.estimate, abs_err_est=exc.abs_err_est, status='not_converged')
        return row
    except (RegionError, DomainError, ParameterError) as exc:
        logger.warning(f"Skipping {rep} at {point}: {exc}")
        row['status'] = 'skipped'
        return row
    except (PcfProdError, ArithmeticError, ValueError) as exc:
        logger.error(f"{rep} at {point} failed: {exc}")
        row['status'] = 'failed'
        return row
    row.update(value=result.value, abs_err_est=result.abs_err_est)
    return row


def sweep(
        rep: str,
        axes: Sequence[List[float]],
        settings: Settings,
        workers: int = 1
) -> List[Dict[str, Any]]:
    """Evaluate every grid point, returning rows in grid order."""
    jobs = [(rep, (p.nu, p.mu, p.x, p.y), settings) for p in grid_points(*axes)]
    logger.info(f"Sweeping {len(jobs)} points of {rep}")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_table_row, jobs))
    return [_table_row(job) for job in jobs]


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    """Sweep a grid and write it."""
    axes = [grid_values(*Validator.validate_range(getattr(args, name), name))
            for name in ALL_FIELDS]
    fmt = args.format or ('json' if args.out.suffix == '.json' else 'csv')
    rows = sweep(args.rep, axes, settings, _workers(args, settings))

    path = DataRepository().save_table(rows, args.out, fmt)
    skipped = sum(1 for row in rows if row['status'] == 'skipped')
    failed = sum(1 for row in rows if row['status'] == 'failed')
    print(f"wrote {len(rows)} rows ({skipped} skipped, {failed} failed) to {path}")
    return EXIT_OK


# ==================== verify ====================

def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    """Run suites, write the report and exit 5 on any failure."""
    tol = (Validator.validate_positive_number(args.tol, "tol")
           if args.tol is not None else settings.verify_tol)
    report = run_verification([args.suite], settings, tol, _workers(args, settings))

    out = args.out or PathConfig().get_report_filename("verify")
    DataRepository().save_report(report, out)

    summary = report.summary()
    print(f"{summary['passed']}/{summary['total']} passed, "
          f"max_rel_diff={report.max_rel_diff:.3e}, report: {out}")
    for row in report.failures():
        print(f"FAIL {row.suite} {row.label} ({row.nu}, {row.mu}, {row.x}, {row.y}) "
              f"rel_diff={row.rel_diff:.3e} {row.note}".rstrip())
    return EXIT_OK if report.all_passed else EXIT_VERIFY_FAILED


# ==================== oracle-table ====================

def cmd_oracle_table(args: argparse.Namespace, settings: Settings) -> int:
    """Regenerate the cross-validation table."""
    digits = Validator.validate_integer(args.digits, "digits", min_value=17)
    frame = cross_validation_table(digits=digits)
    path = DataRepository().save_oracle_table(frame, args.out)
    print(f"wrote {frame.height} oracle points to {path}")
    return EXIT_OK


COMMANDS = {
    'eval': cmd_eval,
    'table': cmd_table,
    'verify': cmd_verify,
    'oracle-table': cmd_oracle_table,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, configure logging and dispatch to a subcommand.

    Returns:
        Process exit status
    """
    try:
        args = build_parser().parse_args(argv)
        settings = SettingsManager(args.settings).settings.with_env_overrides()
    except (ValidationError, ValueError) as exc:
        print(f"{APP_NAME}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(log_level=args.log_level or settings.log_level, file_output=args.log_file)

    try:
        return COMMANDS[args.command](args, settings)
    except ValidationError as exc:
        print(f"{APP_NAME}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RegionError, DomainError, ParameterError) as exc:
        print(f"{APP_NAME}: region error: {exc}", file=sys.stderr)
        return EXIT_REGION
    except ConvergenceError as exc:
        print(f"{APP_NAME}: not converged: {exc} "
              f"(estimate={exc.estimate}, abs_err_est={exc.abs_err_est})", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ReportError, OSError) as exc:
        logger.error(f"I/O failure: {exc}")
        print(f"{APP_NAME}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

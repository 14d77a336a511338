"""Verification report models."""

import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Any, Optional

from src.config.constants import ABS_FLOOR


def relative_difference(value: float, reference: float, floor: float = ABS_FLOOR) -> float:
    """Relative difference with an absolute floor near zeros."""
    if not (math.isfinite(value) and math.isfinite(reference)):
        return math.inf
    diff = abs(value - reference)
    if diff <= floor:
        return 0.0
    scale = abs(reference)
    return diff / scale if scale > 0 else math.inf


@dataclass
class VerifyRow:
    """One checked quantity."""
    suite: str
    label: str
    nu: float
    mu: float
    x: float
    y: float
    value: float
    abs_err_est: float
    oracle: float
    rel_diff: float
    passed: bool
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'suite': self.suite,
            'rep': self.label,
            'nu': self.nu,
            'mu': self.mu,
            'x': self.x,
            'y': self.y,
            'value': _json_float(self.value),
            'abs_err_est': _json_float(self.abs_err_est),
            'oracle': _json_float(self.oracle),
            'rel_diff': _json_float(self.rel_diff),
            'pass': self.passed,
            'note': self.note,
        }


@dataclass
class VerifyReport:
    """Rows of a verification run plus a summary."""
    threshold: float
    suites: List[str] = field(default_factory=list)
    rows: List[VerifyRow] = field(default_factory=list)
    created: str = field(default_factory=lambda: datetime.now().isoformat(timespec='seconds'))

    def add(self, row: VerifyRow) -> None:
        self.rows.append(row)

    def extend(self, rows: List[VerifyRow]) -> None:
        self.rows.extend(rows)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> int:
        return sum(1 for row in self.rows if row.passed)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def max_rel_diff(self) -> float:
        diffs = [row.rel_diff for row in self.rows if row.oracle == row.oracle]
        return max(diffs, default=0.0)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def failures(self, suite: Optional[str] = None) -> List[VerifyRow]:
        """Failed rows, optionally restricted to one suite."""
        return [
            row for row in self.rows
            if not row.passed and (suite is None or row.suite == suite)
        ]

    def summary(self) -> Dict[str, Any]:
        return {
            'total': self.total,
            'passed': self.passed,
            'failed': self.failed,
            'max_rel_diff': _json_float(self.max_rel_diff),
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'header': {
                'threshold': self.threshold,
                'suites': self.suites,
                'created': self.created,
            },
            'summary': self.summary(),
            'rows': [row.to_dict() for row in self.rows],
        }


def _json_float(value: float) -> Any:
    # JSON has no inf/nan
    if value is None or math.isfinite(value):
        return value
    return str(value)

"""Numerical and runtime settings management."""

import json
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Any, Optional

from .constants import (
    SETTINGS_FILE,
    SERIES_MAX_TERMS,
    SERIES_TOL,
    PCF_SERIES_MAX_TERMS,
    QUAD_REL_TOL,
    QUAD_ABS_TOL,
    QUAD_MAX_EVALS,
    QUAD_MAX_LEVELS,
    VERIFY_TOL,
    CROSS_REP_TOL,
    LOG_LEVEL,
    ENV_MAX_EVALS,
    ENV_LOG_LEVEL,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Numerical settings shared by every evaluator.

    Instances are immutable so they can be handed to worker processes.
    """

    # Series
    series_max_terms: int = SERIES_MAX_TERMS
    series_tol: float = SERIES_TOL
    pcf_series_max_terms: int = PCF_SERIES_MAX_TERMS

    # Quadrature
    quad_rel_tol: float = QUAD_REL_TOL
    quad_abs_tol: float = QUAD_ABS_TOL
    quad_max_evals: int = QUAD_MAX_EVALS
    quad_max_levels: int = QUAD_MAX_LEVELS

    # Verification
    verify_tol: float = VERIFY_TOL
    cross_rep_tol: float = CROSS_REP_TOL

    # Runtime
    log_level: str = LOG_LEVEL
    workers: int = 1

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return {
            'series_max_terms': self.series_max_terms,
            'series_tol': self.series_tol,
            'pcf_series_max_terms': self.pcf_series_max_terms,
            'quad_rel_tol': self.quad_rel_tol,
            'quad_abs_tol': self.quad_abs_tol,
            'quad_max_evals': self.quad_max_evals,
            'quad_max_levels': self.quad_max_levels,
            'verify_tol': self.verify_tol,
            'cross_rep_tol': self.cross_rep_tol,
            'log_level': self.log_level,
            'workers': self.workers,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Settings':
        """Create settings from dictionary."""
        return cls(**{
            k: v for k, v in data.items()
            if k in cls.__dataclass_fields__
        })

    def with_env_overrides(self, environ: Optional[Dict[str, str]] = None) -> 'Settings':
        """Apply ``PCFPROD_*`` environment overrides.

        Args:
            environ: Mapping to read instead of ``os.environ``

        Returns:
            New settings with overrides applied

        Raises:
            ValueError: If an override is not a valid value
        """
        env = os.environ if environ is None else environ
        updates: Dict[str, Any] = {}

        raw_evals = env.get(ENV_MAX_EVALS)
        if raw_evals:
            max_evals = int(raw_evals)
            if max_evals <= 0:
                raise ValueError(f"{ENV_MAX_EVALS} must be positive, got {raw_evals}")
            updates['quad_max_evals'] = max_evals

        raw_level = env.get(ENV_LOG_LEVEL)
        if raw_level:
            updates['log_level'] = raw_level.upper()

        if updates:
            logger.debug(f"Environment overrides: {updates}")
        return replace(self, **updates)


class SettingsManager:
    """Manages settings persistence."""

    def __init__(self, settings_file: Optional[Path] = None):
        """Initialize settings manager.

        Args:
            settings_file: Custom settings file path
        """
        self.settings_file = settings_file or SETTINGS_FILE
        self.settings = self._load_settings()

    def _load_settings(self) -> Settings:
        """Load settings from file, falling back to defaults."""
        if self.settings_file.exists():
            try:
                with open(self.settings_file, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                return Settings.from_dict(data)
            except (OSError, json.JSONDecodeError, TypeError) as e:
                logger.warning(f"Error loading settings from {self.settings_file}: {e}")

        return Settings()

    def save_settings(self) -> None:
        """Save settings to file."""
        self.settings_file.parent.mkdir(parents=True, exist_ok=True)

        try:
            with open(self.settings_file, 'w', encoding='utf-8') as f:
                json.dump(self.settings.to_dict(), f, indent=2)
        except OSError as e:
            logger.error(f"Error saving settings: {e}")
            raise

    def update(self, **changes: Any) -> Settings:
        """Replace selected fields.

        Args:
            **changes: Field values to change

        Returns:
            The updated settings
        """
        unknown = set(changes) - set(Settings.__dataclass_fields__)
        if unknown:
            raise KeyError(f"Unknown settings: {sorted(unknown)}")
        self.settings = replace(self.settings, **changes)
        return self.settings

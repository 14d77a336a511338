"""Configuration module for pcfprod."""

from .constants import *
from .settings import Settings, SettingsManager
from .paths import PathConfig
from .logging_config import setup_logging

__all__ = [
    # Constants
    'APP_NAME',
    'APP_VERSION',
    'REP_TAGS',
    'VERIFY_SUITES',
    # Settings
    'Settings',
    'SettingsManager',
    # Paths
    'PathConfig',
    # Logging
    'setup_logging',
]

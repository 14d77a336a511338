"""Logging configuration."""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

from .constants import (
    LOG_FORMAT,
    LOG_DATE_FORMAT,
    LOG_LEVEL,
    LOG_FILE,
    MAX_LOG_SIZE,
    LOG_BACKUP_COUNT
)
from .paths import PathConfig


def setup_logging(
        log_dir: Optional[Path] = None,
        log_level: Optional[str] = None,
        console_output: bool = True,
        file_output: bool = True
) -> None:
    """Setup application logging.

    Console output goes to stderr so stdout stays machine-readable.

    Args:
        log_dir: Directory for log files
        log_level: Logging level
        console_output: Enable console output
        file_output: Enable file output
    """
    log_level = (log_level or LOG_LEVEL).upper()
    level = getattr(logging, log_level, logging.WARNING)

    formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    if console_output:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        console_handler.setLevel(level)
        root_logger.addHandler(console_handler)

    log_file_path = None
    if file_output:
        log_dir = log_dir or PathConfig().logs_dir
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file_path = log_dir / LOG_FILE
        file_handler = logging.handlers.RotatingFileHandler(
            log_file_path,
            maxBytes=MAX_LOG_SIZE,
            backupCount=LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(level)
        root_logger.addHandler(file_handler)

    # numba's compiler is chatty at DEBUG
    logging.getLogger('numba').setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.info("Logging initialized")
    logger.info(f"Log level: {log_level}")
    if log_file_path is not None:
        logger.info(f"Log file: {log_file_path}")


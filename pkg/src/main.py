"""
pcfprod - Main Entry Point

Evaluates products of parabolic cylinder functions from the command line
and runs the verification suites.
"""

import sys
import logging
from pathlib import Path
from typing import Optional, Sequence

# Add project root to Python path
PROJECT_ROOT = Path(__file__).parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.ui.cli import run


def setup_error_handling() -> None:
    """Configure global error handling."""

    def handle_exception(exc_type, exc_value, exc_traceback):
        """Global exception handler."""
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return

        logger = logging.getLogger(__name__)
        logger.critical(
            "Uncaught exception",
            exc_info=(exc_type, exc_value, exc_traceback)
        )
        print(f"Unexpected error: {exc_type.__name__}: {exc_value}", file=sys.stderr)

    sys.excepthook = handle_exception


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main application entry point.

    Returns:
        Exit code
    """
    setup_error_handling()
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

"""Path configuration and management."""

from datetime import datetime
from pathlib import Path
from typing import Optional

from .constants import get_package_directory


class PathConfig:
    """Centralized path configuration."""

    def __init__(self, base_dir: Optional[Path] = None, create: bool = True):
        """Initialize path configuration.

        Args:
            base_dir: Working directory for logs and reports
            create: Create the writable directories
        """
        self.package_dir = get_package_directory()
        self.base_dir = base_dir or self.package_dir.parent
        self._setup_paths()
        if create:
            self._ensure_directories()

    def _setup_paths(self) -> None:
        """Setup all application paths."""
        self.logs_dir = self.base_dir / "logs"
        self.reports_dir = self.base_dir / "reports"

    def _ensure_directories(self) -> None:
        """Ensure writable directories exist."""
        for directory in (self.logs_dir, self.reports_dir):
            directory.mkdir(parents=True, exist_ok=True)

    def get_report_filename(self, report_type: str, extension: str = ".json") -> Path:
        """Get a timestamped filename for a report.

        Args:
            report_type: Type of report
            extension: File extension

        Returns:
            Report file path
        """
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return self.reports_dir / f"{report_type}_{timestamp}{extension}"

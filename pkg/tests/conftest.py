"""Shared pytest fixtures."""

import logging

import pytest

from src.config.settings import Settings
from src.data.repository import DataRepository


@pytest.fixture(autouse=True)
def quiet_numba():
    """Keep numba's compiler out of captured logs."""
    logging.getLogger('numba').setLevel(logging.WARNING)


@pytest.fixture
def settings() -> Settings:
    """Default numerical settings."""
    return Settings()


@pytest.fixture
def workspace(tmp_path):
    """Temporary directory for tables, reports and settings files."""
    return tmp_path


@pytest.fixture
def repository(workspace) -> DataRepository:
    """Repository rooted in the temporary workspace."""
    return DataRepository(workspace)

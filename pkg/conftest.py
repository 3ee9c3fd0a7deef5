"""
Pytest configuration file.

Adds the project root to the Python path and keeps the cached settings and
the structlog configuration from leaking between tests.
"""

import sys
from pathlib import Path

import pytest
import structlog

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.config.settings import get_settings  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    structlog.reset_defaults()

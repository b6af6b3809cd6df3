"""
Shared pytest fixtures and configuration for reality-domain tests.

Puts src/ on the import path and keeps the log file out of the working
directory during test runs.
"""

import logging
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))


@pytest.fixture(autouse=True)
def _reset_root_logger():
    """Drop handlers a test (or the CLI under test) attached to the root logger."""
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        handler.close()

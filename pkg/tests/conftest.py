"""
Shared pytest setup.

Tests marked `slow` run full-scale monodromy certificates (minutes each).
They are skipped unless `--runslow` is given or RDLAB_SLOW_TESTS=1.

Run: python -m pytest tests -v --runslow
"""
import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale run, skipped unless --runslow or RDLAB_SLOW_TESTS=1")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.getenv("RDLAB_SLOW_TESTS", "").strip() == "1":
        return
    skip_slow = pytest.mark.skip(reason="slow: pass --runslow or set RDLAB_SLOW_TESTS=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)

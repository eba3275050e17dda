import os
import tempfile

import pytest

from mfstruct.catalog import parse

_CACHE = tempfile.mkdtemp(prefix="mfstruct-cache-")
os.environ["MFSTRUCT_CACHE"] = _CACHE

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def cache_dir():
    return _CACHE


_TABLES = {}


def catalog_table(expr: str, N: int):
    """Session-wide memo of sieved catalog tables."""
    key = (expr, N)
    if key not in _TABLES:
        _TABLES[key] = parse(expr).table(N)
    return _TABLES[key]


@pytest.fixture(scope="session")
def table():
    return catalog_table


@pytest.fixture
def record_acceptance():
    """Store one pass/fail line per acceptance criterion for the summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

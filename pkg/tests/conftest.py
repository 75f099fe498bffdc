import functools

import pytest

from votecert.enumeration import enumerate_monotone
from votecert.weightedness import decide_weighted

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def monotone(n):
    return tuple(enumerate_monotone(n))


@functools.lru_cache(maxsize=None)
def verdicts(n):
    """(game, decide_weighted verdict) for every monotone game on n players."""
    return tuple((g, decide_weighted(g)) for g in monotone(n))


def proper(g):
    return g.has_empty_losing and g.has_grand_winning


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sweep():
    return verdicts

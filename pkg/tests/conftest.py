import functools

import pytest

from subduction.formats import load_golden
from subduction.solver import solve_island

TABLE1_TRIPLE = ((4, 3, 2, 1), (3, 2, 1), (3, 1))


@functools.lru_cache(maxsize=None)
def solved(lam, lam1, lam2, ordering="row-word-lex", separation="row-diagonal"):
    """Memoized island solve, keyed by tuples so tests can share results."""
    return solve_island(list(lam), list(lam1), list(lam2), ordering=ordering, separation=separation)


@pytest.fixture(scope="session")
def table1():
    return solved(*TABLE1_TRIPLE)


@pytest.fixture(scope="session")
def golden1():
    return load_golden()


@pytest.fixture
def report_line(capsys):
    """Print one line straight to the terminal, bypassing capture."""

    def emit(text):
        with capsys.disabled():
            print(text)

    return emit

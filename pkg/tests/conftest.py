from pathlib import Path

import pytest

from stabcut import build_matrix

DATA = Path(__file__).resolve().parents[1] / "src" / "stabcut" / "data"


@pytest.fixture
def triangle():
    return build_matrix(3, [(1, 2, 1), (1, 3, 2), (2, 3, 3)])


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    from .helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

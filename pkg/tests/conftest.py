import math

import pytest

from wigner_frames.grid import make_grid

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ref_grid():
    return make_grid(1, 256, -10.0, 10.0, 1.0)


@pytest.fixture(scope="session")
def sigma0():
    return 1.0 / math.sqrt(2.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

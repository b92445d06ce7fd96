import numpy as np
import pytest

from _report import LINES


@pytest.fixture
def rng():
    return np.random.default_rng(20210715)


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linxfer.problems import IsingInstance  # noqa: E402


@pytest.fixture
def edge():
    return IsingInstance(2, ((0, 1, 1.0),), label="single edge")


@pytest.fixture
def k4():
    return IsingInstance(4, tuple((i, j, 1.0) for i in range(4) for j in range(i + 1, 4)), label="K4")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_log.lines():
        terminalreporter.write_line(line)

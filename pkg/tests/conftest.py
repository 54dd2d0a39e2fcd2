import math

import pytest

from robertson import GridSpec


def lam_of_cos(c: float) -> float:
    return math.acos(c)


@pytest.fixture(scope="session")
def coarse_grid():
    return GridSpec.default(r_count=12, n_theta=180)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from rqte.core import WavefunctionGrid
from rqte.propagator import gaussian

# (criterion, passed, detail) lines collected by test_acceptance
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture
def gauss_grid():
    """Unit-normalized Gaussian, sigma = 1, on [-10, 10] with spacing 0.05."""
    return WavefunctionGrid.from_function(gaussian(1.0), -10.0, 10.0, 401)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")

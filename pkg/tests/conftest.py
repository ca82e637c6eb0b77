import math

import numpy as np
import pytest

from geogate.design import solve_forward


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def x1_design():
    return solve_forward(1.0, "minus", 1.0, 1.0)


def sweep_designs(n_x=25):
    """The 50-design grid: n_x values of x in [0.05, 1] on both branches, omega = omega1 = 1."""
    return [solve_forward(float(x), b, 1.0, 1.0)
            for x in np.linspace(0.05, 1.0, n_x) for b in ("minus", "plus")]


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_report(request):
    def report(criterion: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        print(line)
        request.config._acceptance_lines.append(line)
        assert ok, line
    return report


SQRT2 = math.sqrt(2)

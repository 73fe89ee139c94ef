import numpy as np
import pytest

from nls8.model import Coefficients, make_dataset


@pytest.fixture
def ones():
    return Coefficients.all_ones()


@pytest.fixture
def fig1():
    return make_dataset((0.3 + 0.2j, 1.0, 1.0))


@pytest.fixture
def fig4():
    return make_dataset((0.3 + 0.1j, 1.0, 1.0), (0.2j, 1.0, 1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

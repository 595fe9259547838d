import numpy as np
import pytest

from rlsort.avi import LearnConfig, avi_learn
from rlsort.valuation import ValueParams

REFERENCE_THETA = ValueParams((-1.4298, -0.4216))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def learned_vp():
    return avi_learn(LearnConfig(seed=0))


@pytest.fixture(scope="session")
def ref_vp():
    return REFERENCE_THETA


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

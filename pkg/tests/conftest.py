import numpy as np
import pytest

from rankgpt.field import make_context
from rankgpt.gpt import SMART, GENERAL, GptParams

P1 = GptParams(q=2, m=12, n=12, k=6, ell=4, variant=SMART, a=2)
P1_GENERAL = GptParams(q=2, m=12, n=12, k=6, ell=4, variant=GENERAL)
P2 = GptParams(q=2, m=24, n=20, k=10, ell=6, variant=SMART, a=3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


@pytest.fixture
def F4():
    return make_context(2, 2, [1, 1, 1])


@pytest.fixture
def F2_12():
    return make_context(2, 12)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_image(rng, h, w=None):
    w = h if w is None else w
    return rng.integers(0, 256, size=(h, w)).astype(np.float64)


def impulse_image(n=64, at=(20, 23), value=255.0):
    x = np.zeros((n, n))
    x[at] = value
    return x


# criterion verdicts collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

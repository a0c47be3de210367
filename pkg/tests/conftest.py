import numpy as np
import pytest

from thermocap.scan import sample_bloch_ball
from thermocap.states import ThermalContext

SEED = 20190213


def random_cases(n, seed=SEED, lam_range=(0.0, 1.0)):
    """Seeded (state, context) pairs: uniform Bloch ball, uniform lambda."""
    rng = np.random.default_rng(seed)
    states = sample_bloch_ball(rng, n)
    lams = rng.uniform(*lam_range, size=n)
    return [(s, ThermalContext.from_lambda(float(l))) for s, l in zip(states, lams)]


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2])):
            terminalreporter.write_line(line)

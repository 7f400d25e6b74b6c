import numpy as np
import pytest

from beeopt.core import Bounds, ObjectiveSpec


class ForcedRandom:
    """Stand-in random source returning fixed values.

    ``uniform`` returns ``rho`` (already on the requested scale), ``random``
    returns ``u``, ``integers`` returns ``k``.
    """

    def __init__(self, rho=0.0, u=0.0, k=0, expo=1.0):
        self.rho, self.u, self.k, self.expo = rho, u, k, expo
        self.seed = 0

    def _fill(self, value, size):
        if size is None:
            return value
        return np.full(size, value)

    def uniform(self, low, high, size=None):
        return self._fill(float(self.rho), size)

    def random(self, size=None):
        return self._fill(float(self.u), size)

    def integers(self, low, high, size=None):
        return self._fill(int(self.k), size)

    def exponential(self, size=None):
        return self._fill(float(self.expo), size)


@pytest.fixture
def forced():
    return ForcedRandom


def constant_objective(dimension, value=1.0, low=-5.0, high=5.0):
    return ObjectiveSpec("constant", dimension, Bounds.uniform(low, high, dimension),
                         lambda x: value, known_optimum_value=value)


@pytest.fixture
def constant_spec():
    return constant_objective


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])

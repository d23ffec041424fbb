import numpy as np
import pytest

from adaptive_leg import RobotParams


@pytest.fixture
def params():
    return RobotParams()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(rng):
    return rng.uniform(-np.pi, np.pi, 4), rng.uniform(-2, 2, 4), rng.uniform(-5, 5, 4)

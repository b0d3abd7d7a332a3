import numpy as np
import pytest

from smhd.core import PhysParams, State


def random_state(rng, h_range=(0.1, 10.0), field_range=(-3.0, 3.0)) -> State:
    return State(
        h=rng.uniform(*h_range),
        v=rng.uniform(*field_range, size=2),
        B=rng.uniform(*field_range, size=2),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def params():
    return PhysParams(g=1.0)

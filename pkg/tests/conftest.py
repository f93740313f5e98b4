import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rotaset import (
    ConvexPolygon,
    Identity,
    Translation,
    horseshoe_disk,
    lm_map,
)

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

IRRATIONAL = (0.41421356, 0.73205081)

UNIT_SQUARE = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))


@pytest.fixture(scope="session")
def lm():
    return lm_map()


@pytest.fixture(scope="session")
def horseshoe():
    return horseshoe_disk()


@pytest.fixture(scope="session")
def irrational_translation():
    return Translation(IRRATIONAL)


@pytest.fixture(scope="session")
def identity():
    return Identity()


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)

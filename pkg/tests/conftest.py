import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "fspace", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("fspace")

from fspace import make_grid  # noqa: E402


@pytest.fixture(scope="session")
def grid1():
    return make_grid(1, 64, 2 ** 14)


@pytest.fixture(scope="session")
def small1():
    return make_grid(1, 32, 256)


@pytest.fixture(scope="session")
def grid2():
    return make_grid(2, 32, 256)

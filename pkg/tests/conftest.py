import numpy as np
import pytest

from ratcheb import registry_get


@pytest.fixture(scope="session")
def exp_fn():
    return registry_get("exp")


@pytest.fixture(scope="session")
def geom_fn():
    return registry_get("geom")


@pytest.fixture(scope="session")
def log1p_fn():
    return registry_get("log1p")


@pytest.fixture(scope="session")
def cos_fn():
    return registry_get("cosz")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def relerr(got, want):
    want = complex(want)
    scale = max(abs(want), 1e-300)
    return abs(complex(got) - want) / scale

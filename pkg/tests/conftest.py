import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("tfc", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("tfc")

ORACLES = json.loads((Path(__file__).parent / "data" / "oracles.json").read_text())


def cz(pair):
    return complex(pair[0], pair[1])


def rel(x, y):
    x, y = complex(x), complex(y)
    return abs(x - y) / max(abs(y), 1e-300)


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240917))

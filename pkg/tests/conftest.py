import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from orthograph import DirectSumElement
from orthograph.randmat import make_rng

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def E(*coords):
    return DirectSumElement.of(*coords)


@pytest.fixture
def rng():
    return make_rng(12345)


J = np.ones((2, 2))
P1 = np.diag([1.0, 0.0])

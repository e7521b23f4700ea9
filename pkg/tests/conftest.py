import os

import pytest
from hypothesis import HealthCheck, settings

from wittcalc.models.rings import IntegerRing, PolynomialRing, burnside_z2_ring

settings.register_profile("fast", max_examples=25, deadline=None)
settings.register_profile("ci", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))

# Sample budget for the sampled axiom checks in tests
SAMPLES = 20
SEED = 7


@pytest.fixture
def integers():
    return IntegerRing()


@pytest.fixture
def a_z2():
    return burnside_z2_ring()


@pytest.fixture
def poly_uv():
    return PolynomialRing(["u", "ubar"])

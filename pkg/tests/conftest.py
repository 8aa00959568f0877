import random

import pytest
from hypothesis import HealthCheck, settings
from szdet.orbifold import modular_orbifold
from szdet.regdet import SurfaceContext
from szdet.verify import random_orbifold
from szdet.zetas import ModularGeodesicSource, ModularScattering

settings.register_profile(
    "suite",
    max_examples=60,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

PREC = 256


@pytest.fixture(scope="session")
def modular_ctx():
    return SurfaceContext(
        modular_orbifold(),
        ModularGeodesicSource(),
        ModularScattering(),
        prec=PREC,
        cutoff_norm=2000,
    )


@pytest.fixture(scope="session")
def orbifold_pool():
    """Deterministic random orbifold/representation configurations."""
    rng = random.Random(432100)
    return [random_orbifold(rng) for _ in range(60)]


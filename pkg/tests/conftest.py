import numpy as np
import pytest
from hypothesis import settings

from revcarleson.quad import QuadConfig

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def small_cfg():
    """A cheap configuration for tests that do not need full resolution."""
    return QuadConfig(N_circle=1 << 10, L_radial=24, K_panel=12, N_mc=20_000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

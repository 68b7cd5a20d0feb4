import numpy as np
import pytest

from qpos1d import ModelParams, SpatialGrid


@pytest.fixture(scope="session")
def params():
    return ModelParams(mass=1.0, light_speed=137.0, coupling=1.0)


@pytest.fixture(scope="session")
def fine_grid():
    """The production grid used by the figure-scale scenarios."""
    return SpatialGrid(16384, -0.16, 0.16)


@pytest.fixture(scope="session")
def medium_grid():
    return SpatialGrid(2048, -0.16, 0.16)


@pytest.fixture(scope="session")
def small_grid():
    return SpatialGrid(256, -0.16, 0.16)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)

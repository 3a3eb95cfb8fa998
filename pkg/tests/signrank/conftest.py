import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def series(rng):
    """A continuous series without zeros or ties."""
    return rng.standard_normal(40)


def _transform(a, b, c, power):
    def transform(z):
        z = np.asarray(z, dtype=float)
        return np.where(z < 0, -a * np.abs(z) ** power - c * np.abs(z),
                        b * np.abs(z) ** power + np.sinh(z))
    return transform


@pytest.fixture
def increasing_transforms(rng):
    """Random strictly increasing maps of the real line that fix zero."""
    return [_transform(*rng.uniform(0.2, 3.0, size=3), rng.uniform(0.5, 2.0))
            for _ in range(100)]

import numpy as np
import pytest

from hfnoise import TickSeries


def make_series(prices, times=None):
    prices = np.asarray(prices, dtype=float)
    if times is None:
        times = np.arange(len(prices), dtype=float)
    return TickSeries(times, prices)


def noise_series(n, a0=5e-3, seed=0):
    """Pure-noise series: constant latent price plus iid Gaussian noise."""
    rng = np.random.default_rng(seed)
    return make_series(a0 * rng.standard_normal(n + 1))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

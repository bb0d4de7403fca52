import numpy as np
import pytest

from harmonic_atlas.series import HarmonicMap


def random_uk_map(rng, max_degree=8, b1_max=0.5, fill=None):
    """A random map meeting the uniformly convex coefficient condition."""
    d = int(rng.integers(2, max_degree + 1))
    h = rng.normal(size=d) + 1j * rng.normal(size=d)
    g = rng.normal(size=d) + 1j * rng.normal(size=d)
    h[0] = 1
    b1 = b1_max * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    g[0] = 0
    n = np.arange(1, d + 1)
    weight = np.sum(n[1:] * (2 * n[1:] - 1) * (np.abs(h[1:]) + np.abs(g[1:])))
    u = rng.uniform(0.05, 1.0) if fill is None else fill
    scale = u * (1 - abs(b1)) / weight
    h[1:] *= scale
    g[1:] *= scale
    g[0] = b1
    return HarmonicMap(h, g)


def random_us_map(rng, max_degree=8, fill=None):
    """A random map meeting the uniformly starlike coefficient condition."""
    d = int(rng.integers(2, max_degree + 1))
    h = rng.normal(size=d) + 1j * rng.normal(size=d)
    g = rng.normal(size=d) + 1j * rng.normal(size=d)
    h[0] = 0
    n = np.arange(1, d + 1)
    weight = np.sum(n * (np.abs(h) + np.abs(g)))
    u = rng.uniform(0.05, 1.0) if fill is None else fill
    h *= 0.5 * u / weight
    g *= 0.5 * u / weight
    h[0] = 1
    return HarmonicMap(h, g)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def sharp_map():
    """z - conj(z^2/6): on the boundary of the convex coefficient condition."""
    return HarmonicMap.from_terms(g={2: -1 / 6})


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[key])

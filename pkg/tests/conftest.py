import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def sphere(x):
    return float(np.sum(x * x))


def sum_abs(x):
    return float(np.sum(np.abs(x)))


@pytest.fixture
def sphere_fn():
    return sphere

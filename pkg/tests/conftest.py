import numpy as np
import pytest


def ulp_tol(n_ulps, *scales):
    """Absolute tolerance of n ulps at the magnitude of the given scales."""
    scale = max(float(np.max(np.abs(s))) for s in scales)
    return n_ulps * np.spacing(scale)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)

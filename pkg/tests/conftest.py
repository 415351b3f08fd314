import numpy as np
import pytest

from bfredholm import kernels


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Each importable kernel backend (compiled and numpy)."""
    return kernels.backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def jordan(lam, n):
    return lam * np.eye(n) + np.eye(n, k=1)

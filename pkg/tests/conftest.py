import numpy as np
import pytest

from lcstates import DensityMatrix, PureState, SystemShape


def random_pure(shape, rng):
    z = rng.standard_normal(shape.total_dim) + 1j * rng.standard_normal(shape.total_dim)
    return PureState(shape, z / np.linalg.norm(z))


def random_density(shape, rng, rank=None):
    d = shape.total_dim
    r = rank or d
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    m = g @ g.conj().T
    return DensityMatrix(shape, m / np.trace(m).real)


def random_unitary(d, rng):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)

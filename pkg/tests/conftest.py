'''
Shared fixtures. The modules under src/ import each other by bare name, so
src/ is put on the path the same way running src/main.py does.
'''
import sys
from pathlib import Path
import numpy as np
import pytest

SRC_PATH = Path(__file__).resolve().parent.parent / 'src'
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from fock_space import DensityMatrix, ModeSpace, enumerate_basis  # noqa: E402


def random_density(basis, rng: np.random.Generator, rank: int=None) -> DensityMatrix:
    '''
    A random full or low rank density matrix over a basis.
    '''
    rank = rank or basis.dimension
    factor = rng.normal(size=(basis.dimension, rank)) + 1j * rng.normal(size=(basis.dimension, rank))
    matrix = factor @ factor.conj().T
    return DensityMatrix(basis, matrix / np.trace(matrix).real)


def flat_basis(dimension: int):
    '''
    A polarization-free single-spatial-mode basis with n_max = 1 and the
    given dimension (vacuum plus dimension - 1 bins).
    '''
    return enumerate_basis(ModeSpace(['a'], aux_bins=dimension - 1), 1)


@pytest.fixture
def qkd_basis():
    '''One spatial mode, H/V polarization, three bins, n_max = 2.'''
    return enumerate_basis(ModeSpace(['a'], ['H', 'V'], 3), 2)


@pytest.fixture
def hom_basis():
    '''Two spatial modes, no polarization, one bin, n_max = 2.'''
    return enumerate_basis(ModeSpace(['a', 'b']), 2)


@pytest.fixture
def hom_two_bin_basis():
    '''Two spatial modes, no polarization, two bins, n_max = 2.'''
    return enumerate_basis(ModeSpace(['a', 'b'], aux_bins=2), 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

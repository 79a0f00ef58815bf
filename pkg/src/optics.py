'''
Optics script.

The script builds the lossless 50:50 beam splitter on the truncated Fock
space and the bucket-detector coincidence measurement behind it.

The beam splitter mixes two spatial modes bin by bin and polarization by
polarization with the real convention

    c^dagger -> (a^dagger + b^dagger) / sqrt(2)
    d^dagger -> (a^dagger - b^dagger) / sqrt(2)

which sends |1,1> to (|2,0> - |0,2>) / sqrt(2). Output modes reuse the
labels of the input modes. The single-photon mode map is lifted to the
Fock basis column by column: U|n> = B_k^dagger U|n - e_k> / sqrt(n_k),
with B_k^dagger the image of a_k^dagger. The lift is exact because it
never creates more photons than the column it builds.

The module requires "numpy" as external package.
'''
import numpy as np
from exceptions import BasisMismatchError, ScenarioError
from fock_space import DensityMatrix, FockBasis, creation_op
from tools import SQRT_HALF, freeze


class BeamSplitter():
    '''
    The Fock-space unitary of a lossless 50:50 beam splitter acting on a
    pair of spatial modes.
    '''

    __slots__ = (
        "_basis",
        "_spatial_pair",
        "_mode_map",
        "_unitary"
        )

    def __init__(self, basis: FockBasis, spatial_pair: tuple, mode_map: np.ndarray):
        self._basis = basis
        self._spatial_pair = tuple(spatial_pair)
        self._mode_map = freeze(mode_map)
        self._unitary = freeze(self._lift())

    @property
    def basis(self) -> FockBasis:
        '''
        The Fock basis of the unitary.
        '''
        return self._basis

    @property
    def spatial_pair(self) -> tuple:
        '''
        The two spatial modes mixed by the beam splitter.
        '''
        return self._spatial_pair

    @property
    def mode_map(self) -> np.ndarray:
        '''
        The single-photon unitary u, a_k^dagger -> sum_j u[j, k] a_j^dagger.
        '''
        return self._mode_map

    @property
    def unitary(self) -> np.ndarray:
        '''
        The read-only Fock-space unitary U.
        '''
        return self._unitary

    def _lift(self) -> np.ndarray:
        '''
        Build U column by column, in basis order.
        '''
        basis = self._basis
        mode_count = basis.space.mode_count
        images = [sum(self._mode_map[target, mode] * creation_op(basis, target)
                      for target in range(mode_count) if self._mode_map[target, mode] != 0)
                  for mode in range(mode_count)]
        unitary = np.zeros((basis.dimension, basis.dimension), dtype=complex)
        unitary[0, 0] = 1
        for column, state in enumerate(basis.states[1:], start=1):
            mode = max(index for index, count in enumerate(state) if count > 0)
            previous = list(state)
            previous[mode] -= 1
            unitary[:, column] = images[mode] @ unitary[:, basis.index_of(previous)] \
                / np.sqrt(state[mode])
        return unitary


def beam_splitter(basis: FockBasis, spatial_pair: tuple=None) -> BeamSplitter:
    '''
    Build the 50:50 beam splitter between two spatial modes.

    :param basis: FockBasis. The basis of the unitary.
    :param spatial_pair: tuple. The (c, d) input modes, by default the first
    two spatial modes of the basis. Other spatial modes are left untouched.

    return BeamSplitter. The beam splitter.
    '''
    space = basis.space
    if spatial_pair is None:
        if len(space.spatial_modes) < 2:
            raise ScenarioError('a beam splitter needs two spatial modes')
        spatial_pair = space.spatial_modes[:2]
    first, second = spatial_pair
    for spatial in (first, second):
        if spatial not in space.spatial_modes:
            raise ScenarioError(f'unknown spatial mode {spatial!r}')
    if first == second:
        raise ScenarioError('a beam splitter mixes two distinct spatial modes')
    mode_map = np.eye(space.mode_count, dtype=complex)
    polarizations = space.polarization_labels or (None,)
    for polarization in polarizations:
        for aux_bin in range(space.aux_bins):
            c_mode = space.mode_index(first, polarization, aux_bin)
            d_mode = space.mode_index(second, polarization, aux_bin)
            mode_map[np.ix_([c_mode, d_mode], [c_mode, d_mode])] = \
                SQRT_HALF * np.array([[1, 1], [1, -1]])
    return BeamSplitter(basis, (first, second), mode_map)


def apply(splitter: BeamSplitter, rho: DensityMatrix) -> DensityMatrix:
    '''
    Get the output state U rho U^dagger.
    '''
    if rho.basis != splitter.basis:
        raise BasisMismatchError('state and beam splitter over different bases')
    unitary = splitter.unitary
    return DensityMatrix(rho.basis, unitary @ rho.matrix @ unitary.conj().T)


def coincidence_projector(basis: FockBasis) -> np.ndarray:
    '''
    Build the projector on all states with exactly one photon on each of the
    two spatial sides, any bin and polarization (bucket detectors).
    '''
    if len(basis.space.spatial_modes) != 2:
        raise ScenarioError('coincidences need exactly two spatial modes, '
                            f'got {list(basis.space.spatial_modes)}')
    first_side = basis.space.modes_of(basis.space.spatial_modes[0])
    second_side = basis.space.modes_of(basis.space.spatial_modes[1])
    one_each = [sum(state[mode] for mode in first_side) == 1
                and sum(state[mode] for mode in second_side) == 1
                for state in basis.states]
    return np.diag(np.array(one_each, dtype=complex))


def coincidence_probability(rho_out: DensityMatrix) -> float:
    '''
    Get the probability Tr(P_coinc rho_out) that both detectors click.
    '''
    return rho_out.expectation(coincidence_projector(rho_out.basis))

'''
Targets script.

A target application is described by the set of states that would serve it
equally well. The target state is the complete (uniform) mixture over an
orthonormal spanning set of those states, rho_T = P / d, where P is the
projector on the suitable subspace and d its dimension; F_TT = 1/d follows.

The built-in targets are:
- qkd_target: one photon with a definite polarization, any auxiliary bin;
- pure_target: one photon in a single polarization and bin (F_TT = 1);
- hom_detector_target: two photons on the same detector side;
- hom_source_target: the detector target seen from the source side of the
  lossless beam splitter, P_source = U^dagger P_detector U.

The module requires "numpy" as external package.
'''
import numpy as np
from exceptions import BasisMismatchError, ScenarioError
from fock_space import (DensityMatrix, FockBasis, StateVector, excitation_state,
                        VALIDATION_TOLERANCE)
from optics import beam_splitter
from tools import max_deviation, polarization_vector


class TargetSpec():
    '''
    A target application: the projector P on its suitable subspace, its
    dimension d and the target state rho_T = P / d.
    '''

    __slots__ = (
        "_basis",
        "_projector",
        "_dim",
        "_rho_t",
        "_label"
        )

    def __init__(self,
                 basis: FockBasis,
                 projector,
                 label: str='',
                 tol: float=VALIDATION_TOLERANCE):
        projector = np.array(projector, dtype=complex)
        if projector.shape != (basis.dimension, basis.dimension):
            raise ScenarioError(f'expected a {basis.dimension}x{basis.dimension} projector, '
                                f'got shape {projector.shape}')
        if max_deviation(projector, projector.conj().T) > tol:
            raise ScenarioError('the target projector is not Hermitian')
        if max_deviation(projector @ projector, projector) > tol:
            raise ScenarioError('the target projector is not idempotent')
        trace = float(np.real(np.trace(projector)))
        dim = int(round(trace))
        if dim < 1:
            raise ScenarioError('the target projector is zero (degenerate target)')
        if abs(trace - dim) > tol:
            raise ScenarioError(f'the target projector trace {trace} is not an integer')
        projector.setflags(write=False)
        self._basis = basis
        self._projector = projector
        self._dim = dim
        self._rho_t = DensityMatrix(basis, projector / dim)
        self._label = label

    @property
    def basis(self) -> FockBasis:
        '''
        The Fock basis of the target.
        '''
        return self._basis

    @property
    def projector(self) -> np.ndarray:
        '''
        The read-only projector P on the suitable subspace.
        '''
        return self._projector

    @property
    def dim(self) -> int:
        '''
        The dimension d = rank(P).
        '''
        return self._dim

    @property
    def rho_t(self) -> DensityMatrix:
        '''
        The target state P / d.
        '''
        return self._rho_t

    @property
    def label(self) -> str:
        '''
        A description of the target.
        '''
        return self._label

    def __repr__(self):
        return f'TargetSpec(label={self._label!r}, dim={self._dim})'


def target_from_states(states: list[StateVector],
                       label: str='',
                       tol: float=VALIDATION_TOLERANCE) -> TargetSpec:
    '''
    Build the complete mixture of a set of suitable states.

    The states must be orthonormal; a non-orthonormal set is rejected.

    :param states: list. The suitable states, over one basis.
    :param label: str. A description of the target.
    :param tol: float. Tolerance on the Gram matrix deviation from identity.

    return TargetSpec. The target with d = len(states).
    '''
    if len(states) == 0:
        raise ScenarioError('a target needs at least one suitable state')
    basis = states[0].basis
    if any(state.basis != basis for state in states):
        raise BasisMismatchError('suitable states over different bases')
    vectors = np.stack([state.amplitudes for state in states], axis=1)
    gram = vectors.conj().T @ vectors
    if max_deviation(gram, np.eye(len(states))) > tol:
        raise ScenarioError('the suitable states are not orthonormal')
    return TargetSpec(basis, vectors @ vectors.conj().T, label, tol)


def target_from_projector(basis: FockBasis,
                          projector,
                          label: str='',
                          tol: float=VALIDATION_TOLERANCE) -> TargetSpec:
    '''
    Build the target of a subspace given by its projector.
    '''
    return TargetSpec(basis, projector, label, tol)


def _signal_mode(basis: FockBasis, spatial_mode: str=None) -> str:
    if spatial_mode is None:
        return basis.space.spatial_modes[0]
    if spatial_mode not in basis.space.spatial_modes:
        raise ScenarioError(f'unknown spatial mode {spatial_mode!r}')
    return spatial_mode


def polarized_mode_amplitudes(basis: FockBasis,
                              polarization,
                              spatial_mode: str=None,
                              aux_bin: int=0) -> dict:
    '''
    Get the mode amplitudes of a photon with a given polarization in one
    spatial mode and bin. Polarization-free spaces ignore the polarization.

    :param basis: FockBasis. The basis of the modes.
    :param polarization: str or list. The polarization (name or amplitudes
    over the first two polarization labels, read as H and V).
    :param spatial_mode: str. The spatial mode, by default the first one.
    :param aux_bin: int. The auxiliary bin.

    return dict. Mode index to amplitude.
    '''
    space = basis.space
    spatial_mode = _signal_mode(basis, spatial_mode)
    if not 0 <= aux_bin < space.aux_bins:
        raise ScenarioError(f'bin {aux_bin} out of range [0, {space.aux_bins - 1}]')
    if not space.has_polarization:
        return {space.mode_index(spatial_mode, None, aux_bin): 1.0}
    if len(space.polarization_labels) != 2:
        raise ScenarioError('polarized photons need exactly two polarization labels (H, V)')
    horizontal, vertical = space.polarization_labels
    amplitudes = polarization_vector('H' if polarization is None else polarization)
    return {space.mode_index(spatial_mode, horizontal, aux_bin): amplitudes[0],
            space.mode_index(spatial_mode, vertical, aux_bin): amplitudes[1]}


def qkd_target(basis: FockBasis, polarization_state, spatial_mode: str=None) -> TargetSpec:
    '''
    Build the QKD target |psi><psi| (x) 1/d: one photon with polarization
    exactly psi, in any of the d auxiliary bins.

    :param basis: FockBasis. A basis with polarization labels.
    :param polarization_state: str or list. The polarization psi.
    :param spatial_mode: str. The signal spatial mode, by default the first.

    return TargetSpec. The target with dim = d.
    '''
    if not basis.space.has_polarization:
        raise ScenarioError('the QKD target needs a basis with polarization labels')
    states = [excitation_state(basis,
                               polarized_mode_amplitudes(basis, polarization_state,
                                                         spatial_mode, aux_bin))
              for aux_bin in range(basis.space.aux_bins)]
    return target_from_states(states, label='qkd')


def pure_target(basis: FockBasis,
                polarization=None,
                aux_bin: int=0,
                spatial_mode: str=None) -> TargetSpec:
    '''
    Build the target of an application needing one specific pure photon
    (teleportation-like protocols). F_TT = 1 and the suitability equals the
    fidelity with that photon.
    '''
    state = excitation_state(basis,
                             polarized_mode_amplitudes(basis, polarization, spatial_mode, aux_bin))
    return target_from_states([state], label='pure')


def _check_hom_basis(basis: FockBasis):
    if len(basis.space.spatial_modes) != 2:
        raise ScenarioError('HOM targets need exactly two spatial modes, '
                            f'got {list(basis.space.spatial_modes)}')
    if basis.n_max < 2:
        raise ScenarioError('HOM targets need n_max >= 2')


def hom_detector_target(basis: FockBasis) -> TargetSpec:
    '''
    Build the detector-side HOM target: both photons on the same detector
    side, any bins and polarizations. The occupation vectors with two
    photons on one side are an orthonormal basis of that subspace, the
    cross-bin ones being the symmetrized same-side pairs.

    :param basis: FockBasis. A basis with two spatial modes and n_max >= 2.

    return TargetSpec. The target, without any cross-side component.
    '''
    _check_hom_basis(basis)
    first_side = basis.space.modes_of(basis.space.spatial_modes[0])
    second_side = basis.space.modes_of(basis.space.spatial_modes[1])
    same_side = [sum(state) == 2 and (sum(state[mode] for mode in first_side) == 2
                                      or sum(state[mode] for mode in second_side) == 2)
                 for state in basis.states]
    return TargetSpec(basis, np.diag(np.array(same_side, dtype=complex)), label='hom_detector')


def hom_source_target(basis: FockBasis) -> TargetSpec:
    '''
    Build the source-side HOM target by conjugating the detector-side target
    with the lossless beam splitter, P_source = U^dagger P_detector U, so
    that S(rho, source target) = S(U rho U^dagger, detector target).
    '''
    detector = hom_detector_target(basis)
    unitary = beam_splitter(basis).unitary
    projector = unitary.conj().T @ detector.projector @ unitary
    return TargetSpec(basis, (projector + projector.conj().T) / 2, label='hom_source')

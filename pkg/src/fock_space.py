'''
Fock space script.

The script defines the discrete-mode, truncated bosonic Fock space on which
every state of the toolkit lives.

A ModeSpace lists the single-photon modes: every combination of a spatial
mode, a polarization label (if any) and an auxiliary spectral-temporal bin.
The auxiliary bins stand in for the frequency and timing continuum of a
real photon: a gun with timing jitter is a mixture over bins.

A FockBasis enumerates all occupation vectors over those modes with at
most n_max photons. The ordering is graded (vacuum first, then all
one-photon states, then all two-photon states, ...) and lexicographic
inside each grade by mode index. Reports and stored results rely on this
ordering being bit-stable.

StateVector and DensityMatrix are immutable values over a FockBasis. A
DensityMatrix validates itself at construction unless told otherwise, so
that validate_density can also be used as a diagnostic on raw matrices.

The module requires "numpy" and "scipy" as external packages.
'''
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
import numpy as np
from scipy.linalg import eigh, eigvalsh
from scipy.sparse import csr_array, diags_array
from exceptions import BasisMismatchError, CapacityError, NumericError, ScenarioError
from tools import freeze, hermitian_part, max_deviation

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()

DEFAULT_N_MAX = 2
DEFAULT_MAX_DIMENSION = 20000
VALIDATION_TOLERANCE = 1e-9
EXACT_TOLERANCE = 1e-12


class ModeSpace():
    '''
    The ordered set of single-photon modes: spatial modes crossed with
    polarization labels (possibly none) and auxiliary bins. The mode index
    is the lexicographic rank over (spatial, polarization, bin) in
    declaration order.
    '''

    __slots__ = (
        "_spatial_modes",
        "_polarization_labels",
        "_aux_bins",
        "_modes"
        )

    def __init__(self,
                 spatial_modes: list[str],
                 polarization_labels: list[str]=None,
                 aux_bins: int=1):
        spatial_modes = tuple(spatial_modes)
        polarization_labels = tuple(polarization_labels or ())
        if len(spatial_modes) == 0:
            raise ScenarioError('a mode space needs at least one spatial mode')
        if not all(isinstance(label, str) for label in spatial_modes + polarization_labels):
            raise TypeError('mode labels must be strings')
        if len(set(spatial_modes)) != len(spatial_modes):
            raise ScenarioError(f'spatial mode labels must be unique, got {list(spatial_modes)}')
        if len(set(polarization_labels)) != len(polarization_labels):
            raise ScenarioError('polarization labels must be unique, '
                                f'got {list(polarization_labels)}')
        if isinstance(aux_bins, bool) or not isinstance(aux_bins, (int, np.integer)):
            raise TypeError('aux_bins must be an integer')
        if aux_bins < 1:
            raise ScenarioError(f'aux_bins must be at least 1, got {aux_bins}')
        self._spatial_modes = spatial_modes
        self._polarization_labels = polarization_labels
        self._aux_bins = int(aux_bins)
        polarizations = polarization_labels if polarization_labels else (None,)
        self._modes = tuple((spatial, polarization, aux_bin)
                            for spatial in spatial_modes
                            for polarization in polarizations
                            for aux_bin in range(self._aux_bins))

    @property
    def spatial_modes(self) -> tuple:
        '''
        The spatial mode labels, in declaration order.
        '''
        return self._spatial_modes

    @property
    def polarization_labels(self) -> tuple:
        '''
        The polarization labels, empty for polarization-free spaces.
        '''
        return self._polarization_labels

    @property
    def aux_bins(self) -> int:
        '''
        The number d of auxiliary spectral-temporal bins.
        '''
        return self._aux_bins

    @property
    def modes(self) -> tuple:
        '''
        The (spatial, polarization, bin) triple of every mode, by mode index.
        The polarization entry is None when the space has no polarization.
        '''
        return self._modes

    @property
    def mode_count(self) -> int:
        '''
        The total number M of single-photon modes.
        '''
        return len(self._modes)

    @property
    def has_polarization(self) -> bool:
        '''
        True when the space carries polarization labels.
        '''
        return len(self._polarization_labels) > 0

    def mode_label(self, mode_index: int) -> str:
        '''
        Human readable label of a mode, e.g. "a:H:0" or "a:0".
        '''
        spatial, polarization, aux_bin = self._modes[mode_index]
        if polarization is None:
            return f'{spatial}:{aux_bin}'
        return f'{spatial}:{polarization}:{aux_bin}'

    def mode_index(self, spatial: str, polarization: str=None, aux_bin: int=0) -> int:
        '''
        Get the index of a mode from its labels.

        :param spatial: str. The spatial mode label.
        :param polarization: str. The polarization label, None for
        polarization-free spaces.
        :param aux_bin: int. The auxiliary bin.

        return int. The mode index.
        '''
        try:
            return self._modes.index((spatial, polarization, aux_bin))
        except ValueError as error:
            raise ScenarioError(f'no mode ({spatial}, {polarization}, {aux_bin}) '
                                'in the mode space') from error

    def modes_of(self, spatial: str) -> list[int]:
        '''
        Get the indexes of all modes belonging to a spatial mode.
        '''
        if spatial not in self._spatial_modes:
            raise ScenarioError(f'unknown spatial mode {spatial!r}')
        return [index for index, mode in enumerate(self._modes) if mode[0] == spatial]

    def sub_space(self, spatial_modes: list[str]) -> 'ModeSpace':
        '''
        Get the mode space restricted to some spatial modes, keeping the
        declaration order of this space.
        '''
        unknown = set(spatial_modes) - set(self._spatial_modes)
        if unknown:
            raise ScenarioError(f'unknown spatial modes {sorted(unknown)}')
        kept = [spatial for spatial in self._spatial_modes if spatial in set(spatial_modes)]
        return ModeSpace(kept, self._polarization_labels, self._aux_bins)

    def join(self, other: 'ModeSpace') -> 'ModeSpace':
        '''
        Get the mode space holding the spatial modes of both spaces, this
        one first. Both spaces must share polarization labels and bins and
        have disjoint spatial modes.
        '''
        overlap = set(self._spatial_modes) & set(other.spatial_modes)
        if overlap:
            raise ScenarioError(f'mode spaces overlap on spatial modes {sorted(overlap)}')
        if self._polarization_labels != other.polarization_labels \
                or self._aux_bins != other.aux_bins:
            raise ScenarioError('joined mode spaces must share polarization labels and aux bins')
        return ModeSpace(self._spatial_modes + other.spatial_modes,
                         self._polarization_labels,
                         self._aux_bins)

    def _key(self):
        return (self._spatial_modes, self._polarization_labels, self._aux_bins)

    def __eq__(self, other):
        if not isinstance(other, ModeSpace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f'ModeSpace(spatial_modes={list(self._spatial_modes)}, '
                f'polarization_labels={list(self._polarization_labels)}, '
                f'aux_bins={self._aux_bins})')


class FockBasis():
    '''
    The graded, lexicographically ordered occupation-number basis of the
    truncated Fock space. Use enumerate_basis to build one.
    '''

    __slots__ = (
        "_space",
        "_n_max",
        "_states",
        "_index",
        "_total_photons"
        )

    def __init__(self, space: ModeSpace, n_max: int, states: list[tuple]):
        self._space = space
        self._n_max = n_max
        self._states = tuple(states)
        self._index = {state: position for position, state in enumerate(self._states)}
        self._total_photons = freeze(np.array([sum(state) for state in self._states],
                                              dtype=int))

    @property
    def space(self) -> ModeSpace:
        '''
        The mode space the basis is built on.
        '''
        return self._space

    @property
    def n_max(self) -> int:
        '''
        The maximum total photon number.
        '''
        return self._n_max

    @property
    def states(self) -> tuple:
        '''
        The occupation vectors, in basis order.
        '''
        return self._states

    @property
    def dimension(self) -> int:
        '''
        The number of basis states.
        '''
        return len(self._states)

    @property
    def total_photons(self) -> np.ndarray:
        '''
        The total photon number of every basis state.
        '''
        return self._total_photons

    def index_of(self, occupation: tuple) -> int:
        '''
        Get the basis index of an occupation vector.
        '''
        occupation = tuple(int(count) for count in occupation)
        if occupation not in self._index:
            raise ScenarioError(f'occupation {occupation} is not in the basis')
        return self._index[occupation]

    def contains(self, occupation: tuple) -> bool:
        '''
        True when the occupation vector belongs to the basis.
        '''
        return tuple(occupation) in self._index

    def vacuum(self) -> 'StateVector':
        '''
        The vacuum state, index 0 of the basis.
        '''
        amplitudes = np.zeros(self.dimension, dtype=complex)
        amplitudes[0] = 1
        return StateVector(self, amplitudes)

    def basis_state(self, occupation: tuple) -> 'StateVector':
        '''
        The state vector of a single occupation vector.
        '''
        amplitudes = np.zeros(self.dimension, dtype=complex)
        amplitudes[self.index_of(occupation)] = 1
        return StateVector(self, amplitudes)

    def __eq__(self, other):
        if not isinstance(other, FockBasis):
            return NotImplemented
        return self is other or (self._space == other.space and self._n_max == other.n_max)

    def __hash__(self):
        return hash((self._space, self._n_max))

    def __repr__(self):
        return f'FockBasis({self._space!r}, n_max={self._n_max}, dimension={self.dimension})'


def basis_dimension(mode_count: int, n_max: int) -> int:
    '''
    Get the dimension of the truncated Fock space, that is the sum over
    k = 0..n_max of C(M + k - 1, k), equal to C(M + n_max, n_max).

    :param mode_count: int. The number M of modes.
    :param n_max: int. The maximum total photon number.
    '''
    return comb(mode_count + n_max, n_max)


@lru_cache(maxsize=64)
def enumerate_basis(space: ModeSpace,
                    n_max: int=DEFAULT_N_MAX,
                    max_dimension: int=DEFAULT_MAX_DIMENSION) -> FockBasis:
    '''
    Enumerate the graded-lexicographic occupation basis of a mode space.

    Inside a grade k, the multisets of k mode indexes are generated in
    lexicographic order, which places photons in the lowest modes first:
    for two modes and k = 2 this gives (2,0), (1,1), (0,2).

    :param space: ModeSpace. The modes of the space.
    :param n_max: int. The maximum total photon number.
    :param max_dimension: int. The capacity cap on the basis dimension.

    return FockBasis. The enumerated basis.
    '''
    if isinstance(n_max, bool) or not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise ScenarioError(f'n_max must be a non-negative integer, got {n_max!r}')
    n_max = int(n_max)
    dimension = basis_dimension(space.mode_count, n_max)
    if dimension > max_dimension:
        raise CapacityError(f'the Fock basis over {space.mode_count} modes with n_max={n_max} '
                            f'has {dimension} states, above the cap of {max_dimension}')
    states = []
    for grade in range(n_max + 1):
        for modes in combinations_with_replacement(range(space.mode_count), grade):
            occupation = [0] * space.mode_count
            for mode in modes:
                occupation[mode] += 1
            states.append(tuple(occupation))
    logger.debug('Enumerated a Fock basis of dimension %d', dimension)
    return FockBasis(space, n_max, states)


class StateVector():
    '''
    A pure state over a Fock basis, normalized at construction.
    '''

    __slots__ = (
        "_basis",
        "_amplitudes"
        )

    def __init__(self, basis: FockBasis, amplitudes, normalize: bool=True):
        amplitudes = np.array(amplitudes, dtype=complex)
        if amplitudes.shape != (basis.dimension,):
            raise ScenarioError(f'expected {basis.dimension} amplitudes, got shape {amplitudes.shape}')
        norm = np.linalg.norm(amplitudes)
        if normalize:
            if norm == 0:
                raise NumericError('cannot normalize the zero vector')
            amplitudes = amplitudes / norm
        elif abs(norm - 1) > VALIDATION_TOLERANCE:
            raise NumericError(f'state vector norm {norm} differs from 1')
        self._basis = basis
        self._amplitudes = freeze(amplitudes)

    @property
    def basis(self) -> FockBasis:
        '''
        The Fock basis of the state.
        '''
        return self._basis

    @property
    def amplitudes(self) -> np.ndarray:
        '''
        The read-only complex amplitude vector.
        '''
        return self._amplitudes

    def inner(self, other: 'StateVector') -> complex:
        '''
        Get the inner product <self|other>.
        '''
        if self._basis != other.basis:
            raise BasisMismatchError('state vectors over different bases')
        return complex(np.vdot(self._amplitudes, other.amplitudes))

    def density(self) -> 'DensityMatrix':
        '''
        Get the projector |psi><psi| as a density matrix.
        '''
        return DensityMatrix(self._basis, np.outer(self._amplitudes, self._amplitudes.conj()))


@dataclass(frozen=True)
class DensityVerdict:
    '''
    Outcome of validate_density.
    '''
    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tolerance: float

    @property
    def passed(self) -> bool:
        '''
        True when every deviation is within the tolerance.
        '''
        return (self.hermiticity_deviation <= self.tolerance
                and self.trace_deviation <= self.tolerance
                and self.min_eigenvalue >= -self.tolerance)


class DensityMatrix():
    '''
    A Hermitian, positive semidefinite, unit-trace matrix over a Fock basis.
    Construction validates the matrix unless validate is False.
    '''

    __slots__ = (
        "_basis",
        "_matrix"
        )

    def __init__(self,
                 basis: FockBasis,
                 matrix,
                 validate: bool=True,
                 tol: float=VALIDATION_TOLERANCE):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (basis.dimension, basis.dimension):
            raise ScenarioError(f'expected a {basis.dimension}x{basis.dimension} matrix, '
                                f'got shape {matrix.shape}')
        self._basis = basis
        self._matrix = freeze(matrix)
        if validate:
            verdict = validate_density(self, tol)
            if not verdict.passed:
                raise NumericError('not a valid density matrix: '
                                   f'hermiticity deviation {verdict.hermiticity_deviation:.3g}, '
                                   f'trace deviation {verdict.trace_deviation:.3g}, '
                                   f'smallest eigenvalue {verdict.min_eigenvalue:.3g}')

    @property
    def basis(self) -> FockBasis:
        '''
        The Fock basis of the matrix.
        '''
        return self._basis

    @property
    def matrix(self) -> np.ndarray:
        '''
        The read-only complex matrix.
        '''
        return self._matrix

    def trace(self) -> float:
        '''
        Get the real part of the trace.
        '''
        return float(np.real(np.trace(self._matrix)))

    def expectation(self, operator: np.ndarray) -> float:
        '''
        Get Re Tr(operator rho).
        '''
        return float(np.real(np.sum(operator * self._matrix.T)))


def mixture(states: list[DensityMatrix], weights) -> DensityMatrix:
    '''
    Get the convex combination sum_i w_i rho_i.

    :param states: list. The density matrices, all over one basis.
    :param weights: list. The probability weights, summing to one.
    '''
    if len(states) == 0 or len(states) != len(weights):
        raise ScenarioError('a mixture needs as many weights as states, at least one')
    basis = states[0].basis
    if any(state.basis != basis for state in states):
        raise BasisMismatchError('mixture components over different bases')
    matrix = sum(weight * state.matrix for weight, state in zip(weights, states))
    return DensityMatrix(basis, matrix)


def validate_density(rho: DensityMatrix, tol: float=VALIDATION_TOLERANCE) -> DensityVerdict:
    '''
    Report the Hermiticity deviation, the trace deviation and the most
    negative eigenvalue of a matrix. Never raises on an invalid matrix.

    :param rho: DensityMatrix. The matrix to check, possibly built with
    validate=False.
    :param tol: float. The tolerance of the verdict.

    return DensityVerdict. The diagnostics and the pass/fail verdict.
    '''
    matrix = rho.matrix
    hermiticity = max_deviation(matrix, matrix.conj().T)
    trace_deviation = abs(np.trace(matrix) - 1)
    eigenvalues = eigvalsh(hermitian_part(matrix))
    return DensityVerdict(hermiticity_deviation=hermiticity,
                          trace_deviation=float(trace_deviation),
                          min_eigenvalue=float(eigenvalues[0]),
                          tolerance=tol)


def repair_density(rho: DensityMatrix, tol: float=VALIDATION_TOLERANCE) -> DensityMatrix:
    '''
    Clamp eigenvalues in [-tol, 0) to zero and restore unit trace. This is
    the only place where a state is ever modified to make it valid.

    :param rho: DensityMatrix. The matrix to repair.
    :param tol: float. Eigenvalues below -tol are not repaired.

    return DensityMatrix. The repaired, validated state.
    '''
    eigenvalues, eigenvectors = eigh(hermitian_part(rho.matrix))
    if eigenvalues[0] < -tol:
        raise NumericError(f'eigenvalue {eigenvalues[0]:.3g} is below -{tol:g}, not repairable')
    clamped = int(np.sum(eigenvalues < 0))
    if clamped:
        logger.warning('Clamping %d slightly negative eigenvalues to zero', clamped)
    eigenvalues = np.clip(eigenvalues, 0, None)
    matrix = (eigenvectors * eigenvalues) @ eigenvectors.conj().T
    return DensityMatrix(rho.basis, matrix / np.trace(matrix).real)


def _check_mode(basis: FockBasis, mode_index: int):
    if not 0 <= mode_index < basis.space.mode_count:
        raise ScenarioError(f'mode index {mode_index} out of range '
                            f'[0, {basis.space.mode_count - 1}]')


@lru_cache(maxsize=256)
def _creation_matrix(basis: FockBasis, mode_index: int) -> csr_array:
    rows, columns, values = [], [], []
    for column, state in enumerate(basis.states):
        if sum(state) >= basis.n_max:
            continue
        raised = list(state)
        raised[mode_index] += 1
        rows.append(basis.index_of(raised))
        columns.append(column)
        values.append(np.sqrt(state[mode_index] + 1))
    return csr_array((np.array(values, dtype=complex), (rows, columns)),
                     shape=(basis.dimension, basis.dimension))


def creation_op(basis: FockBasis, mode_index: int) -> csr_array:
    '''
    Build the truncated creation operator of a mode,
    <n + 1_k| a_k^dagger |n> = sqrt(n_k + 1). States that would exceed
    n_max photons are mapped to zero.

    :param basis: FockBasis. The basis of the matrix.
    :param mode_index: int. The mode k.

    return scipy sparse array. A copy of the cached CSR matrix.
    '''
    _check_mode(basis, mode_index)
    return _creation_matrix(basis, mode_index).copy()


def annihilation_op(basis: FockBasis, mode_index: int) -> csr_array:
    '''
    The annihilation operator, conjugate transpose of creation_op.
    '''
    return creation_op(basis, mode_index).conj().T.tocsr()


def number_operator(basis: FockBasis, mode_index: int) -> csr_array:
    '''
    The diagonal number operator of a mode.
    '''
    _check_mode(basis, mode_index)
    counts = np.array([state[mode_index] for state in basis.states], dtype=complex)
    return diags_array(counts, format='csr')


def number_projector(basis: FockBasis, n: int) -> np.ndarray:
    '''
    Build the projector on the states holding exactly n photons in total.

    :param basis: FockBasis. The basis of the matrix.
    :param n: int. The photon number, 0 <= n <= n_max.

    return numpy array. The diagonal 0/1 matrix.
    '''
    if not 0 <= n <= basis.n_max:
        raise ScenarioError(f'photon number {n} out of range [0, {basis.n_max}]')
    return np.diag((basis.total_photons == n).astype(complex))


def photon_number_distribution(rho: DensityMatrix) -> np.ndarray:
    '''
    Get the probability mass of every total photon number 0..n_max.
    '''
    diagonal = np.real(np.diag(rho.matrix))
    return np.bincount(rho.basis.total_photons,
                       weights=diagonal,
                       minlength=rho.basis.n_max + 1)


def excitation_state(basis: FockBasis, mode_amplitudes, photons: int=1) -> StateVector:
    '''
    Build the normalized state (sum_k c_k a_k^dagger)^n |0>, that is n
    photons in the single-photon mode with amplitudes c_k.

    :param basis: FockBasis. The basis of the state.
    :param mode_amplitudes: dict or list. Amplitude of every mode index
    (a dict may list only the nonzero ones).
    :param photons: int. The number n of photons.
    '''
    if photons > basis.n_max:
        raise ScenarioError(f'{photons} photons do not fit in a basis with n_max={basis.n_max}')
    if not isinstance(mode_amplitudes, dict):
        mode_amplitudes = dict(enumerate(mode_amplitudes))
    raising = sum(complex(amplitude) * creation_op(basis, mode)
                  for mode, amplitude in mode_amplitudes.items() if amplitude != 0)
    vector = basis.vacuum().amplitudes.copy()
    for _ in range(photons):
        vector = raising @ vector
    return StateVector(basis, vector)


def tensor_product(a: DensityMatrix,
                   b: DensityMatrix,
                   n_max: int=None,
                   tol: float=EXACT_TOLERANCE,
                   max_dimension: int=DEFAULT_MAX_DIMENSION) -> DensityMatrix:
    '''
    Get a (x) b re-expressed in the joint graded basis. The joint basis
    holds the spatial modes of a first, then those of b.

    :param a: DensityMatrix. The first factor.
    :param b: DensityMatrix. The second factor, over disjoint spatial modes.
    :param n_max: int. The joint photon cap, by default the larger of the
    two factors' caps.
    :param tol: float. Largest weight allowed on discarded sectors.
    :param max_dimension: int. The capacity cap of the joint basis.

    return DensityMatrix. The product state.
    '''
    joint_space = a.basis.space.join(b.basis.space)
    if n_max is None:
        n_max = max(a.basis.n_max, b.basis.n_max)
    joint_basis = enumerate_basis(joint_space, n_max, max_dimension)
    first, second, joint = [], [], []
    for i, state_a in enumerate(a.basis.states):
        for j, state_b in enumerate(b.basis.states):
            if sum(state_a) + sum(state_b) <= n_max:
                first.append(i)
                second.append(j)
                joint.append(joint_basis.index_of(state_a + state_b))
    matrix = np.zeros((joint_basis.dimension, joint_basis.dimension), dtype=complex)
    matrix[np.ix_(joint, joint)] = a.matrix[np.ix_(first, first)] * b.matrix[np.ix_(second, second)]
    discarded = a.trace() * b.trace() - float(np.real(np.trace(matrix)))
    if discarded > tol:
        raise NumericError(f'tensor product discards weight {discarded:.3g} above n_max={n_max}')
    return DensityMatrix(joint_basis, matrix)


def partial_trace(rho: DensityMatrix,
                  keep: list[str],
                  n_max: int=None,
                  tol: float=EXACT_TOLERANCE) -> DensityMatrix:
    '''
    Trace out every spatial mode not listed in keep.

    :param rho: DensityMatrix. The state to reduce.
    :param keep: list. The spatial mode labels to keep, nonempty.
    :param n_max: int. The photon cap of the reduced basis, by default the
    cap of rho. Weight above a smaller cap must stay below tol.
    :param tol: float. Largest weight allowed above the reduced cap.

    return DensityMatrix. The reduced state over the kept spatial modes.
    '''
    keep = list(keep)
    if len(keep) == 0:
        raise ScenarioError('partial_trace needs at least one spatial mode to keep')
    space = rho.basis.space
    kept_space = space.sub_space(keep)
    kept_modes = [index for index, mode in enumerate(space.modes) if mode[0] in set(keep)]
    traced_modes = [index for index in range(space.mode_count) if index not in set(kept_modes)]
    n_max = rho.basis.n_max if n_max is None else n_max
    reduced_basis = enumerate_basis(kept_space, n_max)
    groups = {}
    for position, state in enumerate(rho.basis.states):
        kept = tuple(state[mode] for mode in kept_modes)
        if sum(kept) > n_max:
            continue
        traced = tuple(state[mode] for mode in traced_modes)
        joint_positions, reduced_positions = groups.setdefault(traced, ([], []))
        joint_positions.append(position)
        reduced_positions.append(reduced_basis.index_of(kept))
    matrix = np.zeros((reduced_basis.dimension, reduced_basis.dimension), dtype=complex)
    for joint_positions, reduced_positions in groups.values():
        matrix[np.ix_(reduced_positions, reduced_positions)] += rho.matrix[
            np.ix_(joint_positions, joint_positions)]
    discarded = rho.trace() - float(np.real(np.trace(matrix)))
    if discarded > tol:
        raise NumericError(f'partial trace discards weight {discarded:.3g} above n_max={n_max}')
    return DensityMatrix(reduced_basis, matrix)


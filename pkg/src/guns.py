'''
Guns script.

The script describes quantum state sources ("guns") by a small parametric
GunSpec and realizes them as density matrices on a Fock basis:

- ideal: one photon in a pure polarization and bin (or a pure superposition
  of bins given by bin_amplitudes);
- jittered: one photon with definite polarization in a bin mixture, the
  emission time being unknown;
- coherent: an attenuated laser pulse, truncated to n_max photons;
- spdc_heralded: a heralded down-conversion source, one photon with
  probability 1 - epsilon and two photons with probability epsilon, in the
  same bin mixture;
- product: two independent guns firing together on distinct spatial modes.

It also provides the QKD security figures of a gun: its suitability for
Alice's target and the multi-photon weight of Eve's view of it, the photon
number splitting leakage that makes S_GE.

The module requires "numpy" and "scipy" as external packages.
'''
import logging
from dataclasses import dataclass, asdict
import numpy as np
from scipy.stats import poisson
from exceptions import BasisMismatchError, NumericError, ScenarioError
from fock_space import (DensityMatrix, FockBasis, creation_op, enumerate_basis, excitation_state,
                        mixture, photon_number_distribution, tensor_product,
                        VALIDATION_TOLERANCE)
from metrics import single_photon_overlap, suitability
from targets import TargetSpec, polarized_mode_amplitudes
from tools import BB84_ALPHABET, parse_complex, polarization_vector, uniform_weights

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()

GUN_KINDS = ('ideal', 'jittered', 'coherent', 'spdc_heralded', 'product')
DEFAULT_PAIR_CUTOFF = 50
TRUNCATION_TOLERANCE = 1e-6


class GunSpec():
    '''
    The parametric description of a gun. Only the fields meaningful for
    the kind are used; the others stay None.
    '''

    __slots__ = (
        "_kind",
        "_polarization",
        "_aux_bin",
        "_bin_amplitudes",
        "_bin_weights",
        "_alpha",
        "_epsilon",
        "_mu",
        "_eta",
        "_vacuum_weight",
        "_spatial_mode",
        "_children"
        )

    def __init__(self,
                 kind: str,
                 *,
                 polarization=None,
                 aux_bin: int=0,
                 bin_amplitudes: list=None,
                 bin_weights: list=None,
                 alpha=None,
                 epsilon: float=None,
                 mu: float=None,
                 eta: float=None,
                 vacuum_weight: float=0.0,
                 spatial_mode: str=None,
                 children: list['GunSpec']=None):
        if kind not in GUN_KINDS:
            raise ScenarioError(f'unknown gun kind {kind!r}, expected one of {list(GUN_KINDS)}')
        self._kind = kind
        self._polarization = polarization
        self._aux_bin = int(aux_bin)
        self._bin_amplitudes = None
        self._bin_weights = None
        self._alpha = None
        self._epsilon = epsilon
        self._mu = mu
        self._eta = eta
        self._vacuum_weight = float(vacuum_weight)
        self._spatial_mode = spatial_mode
        self._children = tuple(children) if children is not None else None
        if polarization is not None:
            try:
                polarization_vector(polarization)
            except (TypeError, ValueError) as error:
                raise ScenarioError(f'invalid polarization {polarization!r}: {error}') from error
        if self._aux_bin < 0:
            raise ScenarioError(f'bin must be non-negative, got {aux_bin}')
        if bin_amplitudes is not None:
            amplitudes = np.array([parse_complex(value) for value in bin_amplitudes])
            if len(amplitudes) == 0 or np.linalg.norm(amplitudes) == 0:
                raise ScenarioError('bin_amplitudes must hold a nonzero amplitude')
            self._bin_amplitudes = amplitudes / np.linalg.norm(amplitudes)
        if bin_weights is not None:
            weights = np.array(bin_weights, dtype=float)
            if len(weights) == 0 or np.any(weights < 0) \
                    or abs(weights.sum() - 1) > VALIDATION_TOLERANCE:
                raise ScenarioError('bin_weights must be a probability vector summing to 1')
            self._bin_weights = weights
        if alpha is not None:
            self._alpha = parse_complex(alpha)
            if not np.isfinite(self._alpha):
                raise ScenarioError('alpha must be finite')
        if epsilon is not None and not 0 <= epsilon <= 1:
            raise ScenarioError(f'epsilon must lie in [0, 1], got {epsilon}')
        if not 0 <= self._vacuum_weight < 1:
            raise ScenarioError(f'vacuum_weight must lie in [0, 1), got {vacuum_weight}')
        self._check_kind()

    def _check_kind(self):
        if self._kind == 'coherent' and self._alpha is None:
            raise ScenarioError('a coherent gun needs alpha')
        if self._kind == 'spdc_heralded':
            has_pairs = self._mu is not None or self._eta is not None
            if (self._epsilon is None) == (not has_pairs):
                raise ScenarioError('a spdc_heralded gun needs either epsilon or both mu and eta')
            if has_pairs:
                _check_pair_parameters(self._mu, self._eta, DEFAULT_PAIR_CUTOFF)
        if self._kind == 'product':
            if self._children is None or len(self._children) != 2:
                raise ScenarioError('a product gun needs exactly two children')
            if not all(isinstance(child, GunSpec) for child in self._children):
                raise TypeError('product children must be GunSpec instances')
        elif self._children is not None:
            raise ScenarioError(f'a {self._kind} gun takes no children')
        if self._vacuum_weight > 0 and self._kind != 'spdc_heralded':
            raise ScenarioError('vacuum_weight is only defined for spdc_heralded guns')

    @property
    def kind(self) -> str:
        '''
        The gun kind, one of GUN_KINDS.
        '''
        return self._kind

    @property
    def polarization(self):
        '''
        The polarization as given (name or amplitudes), None for H.
        '''
        return self._polarization

    @property
    def aux_bin(self) -> int:
        '''
        The auxiliary bin of ideal and coherent guns.
        '''
        return self._aux_bin

    @property
    def bin_amplitudes(self):
        '''
        The normalized bin superposition of an ideal gun, or None.
        '''
        return self._bin_amplitudes

    @property
    def bin_weights(self):
        '''
        The bin mixture of jittered and spdc_heralded guns, None for uniform.
        '''
        return self._bin_weights

    @property
    def alpha(self) -> complex:
        '''
        The coherent amplitude.
        '''
        return self._alpha

    @property
    def epsilon(self) -> float:
        '''
        The two-photon fraction of a spdc_heralded gun as given.
        '''
        return self._epsilon

    @property
    def mu(self) -> float:
        '''
        The mean pair number of a spdc_heralded gun.
        '''
        return self._mu

    @property
    def eta(self) -> float:
        '''
        The herald detector efficiency of a spdc_heralded gun.
        '''
        return self._eta

    @property
    def vacuum_weight(self) -> float:
        '''
        The no-fire probability (extension, zero for heralded sources).
        '''
        return self._vacuum_weight

    @property
    def spatial_mode(self) -> str:
        '''
        The spatial mode the gun fires into, None for the first one.
        '''
        return self._spatial_mode

    @property
    def children(self) -> tuple:
        '''
        The two guns of a product gun.
        '''
        return self._children

    def two_photon_fraction(self,
                            n_cut: int=DEFAULT_PAIR_CUTOFF,
                            truncation_tol: float=TRUNCATION_TOLERANCE) -> float:
        '''
        The epsilon of a spdc_heralded gun, derived from the pair statistics
        when it is not given.
        '''
        if self._epsilon is not None:
            return self._epsilon
        return epsilon_from_pair_statistics(self._mu, self._eta, n_cut, truncation_tol)

    def replace(self, **changes) -> 'GunSpec':
        '''
        Get a copy of the gun description with some fields changed.
        '''
        fields = {'polarization': self._polarization,
                  'aux_bin': self._aux_bin,
                  'bin_amplitudes': self._bin_amplitudes,
                  'bin_weights': self._bin_weights,
                  'alpha': self._alpha,
                  'epsilon': self._epsilon,
                  'mu': self._mu,
                  'eta': self._eta,
                  'vacuum_weight': self._vacuum_weight,
                  'spatial_mode': self._spatial_mode,
                  'children': self._children}
        fields.update(changes)
        return GunSpec(self._kind, **fields)

    def with_polarization(self, polarization) -> 'GunSpec':
        '''
        Get the same gun firing with another polarization; product guns pass
        it to both children.
        '''
        if self._kind == 'product':
            return self.replace(children=[child.with_polarization(polarization)
                                          for child in self._children])
        return self.replace(polarization=polarization)

    def __repr__(self):
        return f'GunSpec(kind={self._kind!r})'


@dataclass(frozen=True)
class QkdSecurityReport:
    '''
    Suitability of a gun for Alice's QKD target and for Eve.
    '''
    s_gt: float
    s_ge: float
    epsilon: float
    f1_gg: float
    vacuum_probability: float

    def as_row(self) -> dict:
        '''
        The report as a flat dictionary.
        '''
        return asdict(self)


def _check_pair_parameters(mu: float, eta: float, n_cut: int):
    if mu is None or eta is None:
        raise ScenarioError('pair statistics need both mu and eta')
    if not mu > 0:
        raise ScenarioError(f'mu must be positive, got {mu}')
    if not 0 < eta <= 1:
        raise ScenarioError(f'eta must lie in (0, 1], got {eta}')
    if n_cut < 2:
        raise ScenarioError(f'the pair number cutoff must be at least 2, got {n_cut}')


def epsilon_from_pair_statistics(mu: float,
                                 eta: float,
                                 n_cut: int=DEFAULT_PAIR_CUTOFF,
                                 truncation_tol: float=TRUNCATION_TOLERANCE) -> float:
    '''
    Get the two-photon contamination of a heralded down-conversion source:
    the probability that the signal holds two or more photons given that
    the herald fired. Pairs are Poisson distributed with mean mu and the
    herald fires on n pairs with probability 1 - (1 - eta)^n.

    :param mu: float. The mean pair number per time window, > 0.
    :param eta: float. The herald detector efficiency, in (0, 1].
    :param n_cut: int. The last pair number of the truncated sums, >= 2.
    :param truncation_tol: float. The largest Poisson weight allowed beyond n_cut.

    return float. The contamination epsilon.
    '''
    _check_pair_parameters(mu, eta, n_cut)
    tail = float(poisson.sf(n_cut, mu))
    if tail > truncation_tol:
        raise NumericError(f'pair statistics with mu={mu:g} lose weight {tail:.3g} '
                           f'above n_cut={n_cut}')
    pairs = np.arange(n_cut + 1)
    heralded = poisson.pmf(pairs, mu) * (1 - (1 - eta) ** pairs)
    fired = heralded[1:].sum()
    if not np.isfinite(fired) or fired <= 0:
        raise NumericError(f'the herald probability underflows for mu={mu:g}, eta={eta:g}')
    epsilon = float(heralded[2:].sum() / fired)
    if not np.isfinite(epsilon):
        raise NumericError(f'the two-photon fraction is not finite for mu={mu:g}, eta={eta:g}')
    return epsilon


def _resolve_spatial(spec: GunSpec, basis: FockBasis) -> str:
    spatial_mode = spec.spatial_mode or basis.space.spatial_modes[0]
    if spatial_mode not in basis.space.spatial_modes:
        raise ScenarioError(f'gun fires into unknown spatial mode {spatial_mode!r}')
    return spatial_mode


def _bin_mixture(spec: GunSpec, basis: FockBasis, photons: int) -> DensityMatrix:
    '''
    The mixture sum_b w_b |n photons in (psi, b)><...| of jittered and
    heralded guns.
    '''
    aux_bins = basis.space.aux_bins
    weights = spec.bin_weights if spec.bin_weights is not None else uniform_weights(aux_bins)
    if len(weights) != aux_bins:
        raise ScenarioError(f'bin_weights has {len(weights)} entries for {aux_bins} bins')
    spatial_mode = _resolve_spatial(spec, basis)
    states = [excitation_state(basis,
                               polarized_mode_amplitudes(basis, spec.polarization,
                                                         spatial_mode, aux_bin),
                               photons).density()
              for aux_bin in range(aux_bins)]
    return mixture(states, weights)


def _realize_ideal(spec: GunSpec, basis: FockBasis) -> DensityMatrix:
    spatial_mode = _resolve_spatial(spec, basis)
    if spec.bin_amplitudes is None:
        bin_amplitudes = {spec.aux_bin: 1.0}
    else:
        if len(spec.bin_amplitudes) > basis.space.aux_bins:
            raise ScenarioError(f'bin_amplitudes has {len(spec.bin_amplitudes)} entries '
                                f'for {basis.space.aux_bins} bins')
        bin_amplitudes = dict(enumerate(spec.bin_amplitudes))
    mode_amplitudes = {}
    for aux_bin, bin_amplitude in bin_amplitudes.items():
        modes = polarized_mode_amplitudes(basis, spec.polarization, spatial_mode, aux_bin)
        for mode, amplitude in modes.items():
            mode_amplitudes[mode] = bin_amplitude * amplitude
    return excitation_state(basis, mode_amplitudes).density()


def _realize_coherent(spec: GunSpec,
                      basis: FockBasis,
                      truncation_tol: float) -> DensityMatrix:
    '''
    |alpha> = exp(-|alpha|^2 / 2) sum_n alpha^n / n! (B^dagger)^n |0>,
    truncated at n_max and renormalized.
    '''
    spatial_mode = _resolve_spatial(spec, basis)
    mean_photons = abs(spec.alpha) ** 2
    loss = float(poisson.sf(basis.n_max, mean_photons))
    if loss > truncation_tol:
        raise NumericError(f'coherent state with |alpha|^2={mean_photons:g} loses weight '
                           f'{loss:.3g} above n_max={basis.n_max}')
    modes = polarized_mode_amplitudes(basis, spec.polarization, spatial_mode, spec.aux_bin)
    raising = sum(amplitude * creation_op(basis, mode) for mode, amplitude in modes.items())
    term = basis.vacuum().amplitudes.copy()
    vector = term.copy()
    for photons in range(1, basis.n_max + 1):
        term = spec.alpha * (raising @ term) / photons
        vector = vector + term
    state = np.outer(vector, vector.conj())
    return DensityMatrix(basis, state / np.real(np.trace(state)))


def _realize_spdc(spec: GunSpec,
                  basis: FockBasis,
                  n_cut: int,
                  truncation_tol: float) -> DensityMatrix:
    epsilon = spec.two_photon_fraction(n_cut, truncation_tol)
    state = _bin_mixture(spec, basis, 1)
    if epsilon > 0:
        state = mixture([state, _bin_mixture(spec, basis, 2)], [1 - epsilon, epsilon])
    if spec.vacuum_weight > 0:
        logger.warning('Gun uses the vacuum_weight extension (no-fire events, %g)',
                       spec.vacuum_weight)
        state = mixture([basis.vacuum().density(), state],
                        [spec.vacuum_weight, 1 - spec.vacuum_weight])
    return state


def _realize_product(spec: GunSpec,
                     basis: FockBasis,
                     n_cut: int,
                     truncation_tol: float) -> DensityMatrix:
    '''
    Realize both children on their own spatial mode and take the product.
    Children without a spatial mode take the basis spatial modes in order.
    '''
    spatial_modes = basis.space.spatial_modes
    if len(spatial_modes) != 2:
        raise ScenarioError('a product gun needs a basis with exactly two spatial modes')
    assigned = [child.spatial_mode or spatial_modes[position]
                for position, child in enumerate(spec.children)]
    if sorted(assigned) != sorted(spatial_modes):
        raise ScenarioError(f'product children must fire into distinct modes {list(spatial_modes)}, '
                            f'got {assigned}')
    factors = {}
    for child, spatial_mode in zip(spec.children, assigned):
        side = enumerate_basis(basis.space.sub_space([spatial_mode]), basis.n_max)
        factors[spatial_mode] = realize_gun(child.replace(spatial_mode=spatial_mode), side,
                                            n_cut, truncation_tol)
    return tensor_product(factors[spatial_modes[0]], factors[spatial_modes[1]], basis.n_max)


def realize_gun(spec: GunSpec,
                basis: FockBasis,
                n_cut: int=DEFAULT_PAIR_CUTOFF,
                truncation_tol: float=TRUNCATION_TOLERANCE) -> DensityMatrix:
    '''
    Get the state rho_G emitted by a gun.

    :param spec: GunSpec. The gun description.
    :param basis: FockBasis. The basis of the state.
    :param n_cut: int. Pair number cutoff of spdc guns given by mu and eta.
    :param truncation_tol: float. Largest weight a coherent gun may lose
    above n_max, or the pair statistics of a spdc gun above n_cut.

    return DensityMatrix. The validated gun state.
    '''
    if spec.kind == 'ideal':
        return _realize_ideal(spec, basis)
    if spec.kind == 'jittered':
        return _bin_mixture(spec, basis, 1)
    if spec.kind == 'coherent':
        return _realize_coherent(spec, basis, truncation_tol)
    if spec.kind == 'spdc_heralded':
        return _realize_spdc(spec, basis, n_cut, truncation_tol)
    return _realize_product(spec, basis, n_cut, truncation_tol)


def eve_view(spec: GunSpec,
             basis: FockBasis,
             alphabet: list=BB84_ALPHABET,
             n_cut: int=DEFAULT_PAIR_CUTOFF,
             truncation_tol: float=TRUNCATION_TOLERANCE) -> DensityMatrix:
    '''
    Get Eve's description sigma_G of the gun: not knowing Alice's choice,
    she averages the gun over the polarization alphabet.

    :param spec: GunSpec. The gun description.
    :param basis: FockBasis. The basis of the state.
    :param alphabet: list. Alice's polarization states, by default the BB84
    set {H, V, L, R}.

    return DensityMatrix. The state sigma_G.
    '''
    if len(alphabet) == 0:
        raise ScenarioError('the polarization alphabet is empty')
    states = [realize_gun(spec.with_polarization(polarization), basis, n_cut, truncation_tol)
              for polarization in alphabet]
    return mixture(states, uniform_weights(len(states)))


def polarization_state(rho: DensityMatrix) -> np.ndarray:
    '''
    Get the 2x2 polarization state of the one-photon sector, traced over
    spatial modes and bins and normalized by the one-photon weight.
    '''
    space = rho.basis.space
    if len(space.polarization_labels) != 2:
        raise ScenarioError('the polarization state needs exactly two polarization labels')
    one_photon = [(position, space.modes[state.index(1)])
                  for position, state in enumerate(rho.basis.states) if sum(state) == 1]
    labels = space.polarization_labels
    reduced = np.zeros((2, 2), dtype=complex)
    for row, (spatial, polarization, aux_bin) in one_photon:
        for column, (other_spatial, other_polarization, other_bin) in one_photon:
            if spatial == other_spatial and aux_bin == other_bin:
                reduced[labels.index(polarization), labels.index(other_polarization)] += \
                    rho.matrix[row, column]
    weight = np.real(np.trace(reduced))
    if weight <= 0:
        raise NumericError('the state has no one-photon component')
    return reduced / weight


def qkd_security(spec: GunSpec,
                 basis: FockBasis,
                 target: TargetSpec,
                 alphabet: list=BB84_ALPHABET,
                 postselect_emission: bool=True,
                 n_cut: int=DEFAULT_PAIR_CUTOFF,
                 truncation_tol: float=TRUNCATION_TOLERANCE) -> QkdSecurityReport:
    '''
    Rate a gun for QKD: S_GT is its suitability for Alice's target and S_GE
    the multi-photon weight of Eve's view sigma_G, the share of pulses open
    to photon number splitting.

    :param spec: GunSpec. The gun description.
    :param basis: FockBasis. The basis of the states.
    :param target: TargetSpec. Alice's QKD target over the same basis.
    :param alphabet: list. Alice's polarization alphabet for Eve's view.
    :param postselect_emission: bool. Condition both figures on the gun
    emitting something (non-vacuum); when False, no-fire events lower S_GT
    and S_GE together.

    return QkdSecurityReport. The security figures.
    '''
    if target.basis != basis:
        raise BasisMismatchError('the QKD target is over another basis')
    rho = realize_gun(spec, basis, n_cut, truncation_tol)
    sigma = eve_view(spec, basis, alphabet, n_cut, truncation_tol)
    distribution = photon_number_distribution(sigma)
    vacuum = float(photon_number_distribution(rho)[0])
    s_gt = suitability(rho, target).suitability
    s_ge = float(distribution[2:].sum())
    if postselect_emission:
        if vacuum >= 1:
            raise NumericError('the gun never emits, post-selection is undefined')
        s_gt /= 1 - vacuum
        s_ge /= 1 - vacuum
    if spec.kind == 'spdc_heralded':
        epsilon = spec.two_photon_fraction(n_cut, truncation_tol)
    else:
        epsilon = float(distribution[2:].sum() / max(1 - distribution[0], np.finfo(float).tiny))
    return QkdSecurityReport(s_gt=s_gt,
                             s_ge=s_ge,
                             epsilon=epsilon,
                             f1_gg=single_photon_overlap(rho, rho),
                             vacuum_probability=vacuum)

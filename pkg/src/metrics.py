'''
Metrics script.

The script implements the state-comparison functionals used to rate a gun
against a target application:

- overlap F_AB = Tr(rho_A rho_B), with purity F_AA;
- the Jozsa fidelity f_AB = {Tr[(sqrt(rho_A) rho_B sqrt(rho_A))^(1/2)]}^2;
- the one-photon projected overlap F1_AB = Re Tr(rho_A P_1 rho_B);
- the suitability S_GT = F_GT / F_TT with its bounds.

The bound S_GT <= F_GG / F_TT only holds when the gun lives inside the
target subspace; the report therefore always carries the Cauchy-Schwarz
bound sqrt(F_GG / F_TT) and flags when the tighter bound applies.

The module requires "numpy" and "scipy" as external packages.
'''
from dataclasses import dataclass, asdict
import numpy as np
from scipy.linalg import eigh, svdvals
from exceptions import BasisMismatchError, NumericError
from fock_space import DensityMatrix, VALIDATION_TOLERANCE
from tools import hermitian_part


@dataclass(frozen=True)
class MetricReport:
    '''
    Suitability of a gun state for a target, with the quantities it is
    built from.
    '''
    f_gt: float
    f_tt: float
    f_gg: float
    f1_gg: float
    suitability: float
    fidelity: float
    cs_bound: float
    purity_bound: float
    single_photon_bound: float
    purity_bound_applicable: bool

    def as_row(self) -> dict:
        '''
        The report as a flat dictionary.
        '''
        return asdict(self)


def _check_same_basis(a: DensityMatrix, b: DensityMatrix):
    if a.basis != b.basis:
        raise BasisMismatchError(f'operands over different bases: {a.basis!r} and {b.basis!r}')


def _as_matrix(a) -> np.ndarray:
    return a.matrix if isinstance(a, DensityMatrix) else np.asarray(a, dtype=complex)


def overlap(a: DensityMatrix, b: DensityMatrix) -> float:
    '''
    Get F_AB = Tr(rho_A rho_B), equal to |<psi|phi>|^2 for pure states.

    :param a: DensityMatrix. The first state.
    :param b: DensityMatrix. The second state, same basis.

    return float. The overlap in [0, 1].
    '''
    _check_same_basis(a, b)
    return float(np.real(np.sum(a.matrix * b.matrix.T)))


def purity(a: DensityMatrix) -> float:
    '''
    Get F_AA = Tr(rho^2): 1 for pure states, 1/d for a complete mixture
    over d dimensions.
    '''
    return overlap(a, a)


def _clamp_spectrum(eigenvalues: np.ndarray, tol: float) -> np.ndarray:
    '''
    Reject eigenvalues below -tol and zero those at rounding level.
    '''
    if eigenvalues[0] < -tol:
        raise NumericError(f'matrix has eigenvalue {eigenvalues[0]:.3g} below -{tol:g}')
    rounding = 10 * len(eigenvalues) * np.finfo(float).eps * np.max(np.abs(eigenvalues))
    return np.where(eigenvalues > rounding, eigenvalues, 0.0)


def psd_sqrt(a, tol: float=VALIDATION_TOLERANCE) -> np.ndarray:
    '''
    Get the Hermitian positive semidefinite square root through a
    Hermitian eigendecomposition. Eigenvalues in [-tol, 0) and eigenvalues
    at rounding level are taken as 0.

    :param a: DensityMatrix or numpy array. A Hermitian PSD matrix.
    :param tol: float. Eigenvalues below -tol are rejected.

    return numpy array. The square root.
    '''
    eigenvalues, eigenvectors = eigh(hermitian_part(_as_matrix(a)))
    roots = np.sqrt(_clamp_spectrum(eigenvalues, tol))
    return (eigenvectors * roots) @ eigenvectors.conj().T


def jozsa_fidelity(a: DensityMatrix, b: DensityMatrix, tol: float=VALIDATION_TOLERANCE) -> float:
    '''
    Get the Jozsa fidelity of two states. It is symmetric, equals 1 only on
    identical states and reduces to <psi|rho_B|psi> when rho_A is pure.
    It is computed as (sum of the singular values of sqrt(rho_A) sqrt(rho_B))^2.

    :param a: DensityMatrix. The first state.
    :param b: DensityMatrix. The second state, same basis.
    :param tol: float. Eigenvalue tolerance of the square roots.

    return float. The fidelity in [0, 1].
    '''
    _check_same_basis(a, b)
    singular_values = svdvals(psd_sqrt(a, tol) @ psd_sqrt(b, tol))
    fidelity = np.sum(singular_values) ** 2
    return float(np.clip(fidelity, 0, 1))


def single_photon_overlap(a: DensityMatrix, b: DensityMatrix) -> float:
    '''
    Get F1_AB = Re Tr(rho_A P_1 rho_B), with P_1 the projector on the
    one-photon sector. The real part is the symmetrized value
    Tr(rho_A P_1 rho_B + rho_B P_1 rho_A) / 2; for A = B it is exact.
    '''
    _check_same_basis(a, b)
    one_photon = a.basis.total_photons == 1
    # Tr(A P B) = sum over one-photon i of (B A)_ii
    product = b.matrix[one_photon, :] @ a.matrix[:, one_photon]
    return float(np.real(np.trace(product)))


def support_leakage(gun: DensityMatrix, projector: np.ndarray) -> float:
    '''
    Get Tr((I - P) rho (I - P)), the gun weight outside a subspace.
    '''
    complement = np.eye(gun.basis.dimension) - projector
    return float(np.real(np.trace(complement @ gun.matrix @ complement)))


def suitability(gun: DensityMatrix, target, tol: float=VALIDATION_TOLERANCE) -> MetricReport:
    '''
    Rate a gun against a target application, S_GT = F_GT / F_TT.

    For a target built as a complete mixture P/d, S_GT is the probability
    mass of the gun inside the target subspace. For a single pure target
    state it reduces to the fidelity f_GT.

    :param gun: DensityMatrix. The gun state rho_G.
    :param target: TargetSpec. The target application.
    :param tol: float. Tolerance of the support containment test.

    return MetricReport. All the metrics of the pair.
    '''
    rho_t = target.rho_t
    _check_same_basis(gun, rho_t)
    f_gt = overlap(gun, rho_t)
    f_tt = purity(rho_t)
    f_gg = purity(gun)
    f1_gg = single_photon_overlap(gun, gun)
    return MetricReport(f_gt=f_gt,
                        f_tt=f_tt,
                        f_gg=f_gg,
                        f1_gg=f1_gg,
                        suitability=f_gt / f_tt,
                        fidelity=jozsa_fidelity(gun, rho_t),
                        cs_bound=float(np.sqrt(f_gg / f_tt)),
                        purity_bound=f_gg / f_tt,
                        single_photon_bound=f1_gg / f_tt,
                        purity_bound_applicable=support_leakage(gun, target.projector) <= tol)


import numpy as np
import pytest
from hypothesis import assume, example, given, settings, strategies as st
from conftest import flat_basis, random_density
from exceptions import BasisMismatchError
from fock_space import DensityMatrix, ModeSpace, StateVector, enumerate_basis, tensor_product
from metrics import (jozsa_fidelity, overlap, psd_sqrt, purity, single_photon_overlap,
                     suitability)
from targets import target_from_projector, target_from_states


def test_overlap_of_pure_states():
    basis = enumerate_basis(ModeSpace(['a', 'b']), 1)
    psi = StateVector(basis, [0, 1, 0])
    phi = StateVector(basis, [0, 1, 1j])
    assert overlap(psi.density(), phi.density()) == pytest.approx(abs(psi.inner(phi)) ** 2)
    assert overlap(psi.density(), phi.density()) == pytest.approx(0.5)


def test_purity_of_complete_mixture():
    basis = flat_basis(4)
    assert purity(DensityMatrix(basis, np.eye(4) / 4)) == pytest.approx(0.25)
    assert purity(basis.vacuum().density()) == pytest.approx(1)


def test_operands_over_different_bases():
    with pytest.raises(BasisMismatchError):
        overlap(flat_basis(2).vacuum().density(), flat_basis(3).vacuum().density())


def test_psd_sqrt_squares_back():
    rho = random_density(flat_basis(6), np.random.default_rng(1), rank=3)
    root = psd_sqrt(rho)
    np.testing.assert_allclose(root @ root, rho.matrix, atol=1e-10)
    np.testing.assert_allclose(root, root.conj().T, atol=1e-12)


def test_fidelity_with_pure_state_is_expectation():
    basis = flat_basis(5)
    rng = np.random.default_rng(2)
    pure = StateVector(basis, rng.normal(size=5) + 1j * rng.normal(size=5))
    rho = random_density(basis, rng)
    expected = np.real(pure.amplitudes.conj() @ rho.matrix @ pure.amplitudes)
    assert jozsa_fidelity(pure.density(), rho) == pytest.approx(expected, abs=1e-9)


def test_single_photon_overlap_ignores_other_sectors():
    basis = enumerate_basis(ModeSpace(['a']), 2)
    rho = DensityMatrix(basis, np.diag([0.2, 0.5, 0.3]))
    assert single_photon_overlap(rho, rho) == pytest.approx(0.25)


def test_suitability_is_mass_inside_target():
    basis = flat_basis(4)
    projector = np.diag([0, 1, 1, 0]).astype(complex)
    target = target_from_projector(basis, projector)
    gun = DensityMatrix(basis, np.diag([0.1, 0.3, 0.4, 0.2]))
    report = suitability(gun, target)
    assert report.f_tt == pytest.approx(0.5)
    assert report.suitability == pytest.approx(0.7)
    assert not report.purity_bound_applicable


def test_equally_useful_guns_differ_in_fidelity():
    basis = flat_basis(4)
    target = target_from_projector(basis, np.diag([0, 1, 1, 1]).astype(complex))
    pure = basis.basis_state((1, 0, 0)).density()
    mixed = DensityMatrix(basis, np.diag([0, 0.5, 0.5, 0]))
    pure_report = suitability(pure, target)
    mixed_report = suitability(mixed, target)
    assert pure_report.suitability == pytest.approx(1)
    assert mixed_report.suitability == pytest.approx(1)
    assert pure_report.fidelity == pytest.approx(1 / 3)
    assert mixed_report.fidelity == pytest.approx(2 / 3)


def test_unrestricted_bound_counterexample():
    '''
    A gun half in the vacuum and half spread over 99 other states, against
    the vacuum as a pure target: F_GT exceeds F_GG, so S_GT <= F_GG / F_TT
    fails outside the target support while Cauchy-Schwarz still holds.
    '''
    basis = enumerate_basis(ModeSpace(['a']), 99)
    gun = DensityMatrix(basis, np.diag([0.5] + [0.5 / 99] * 99))
    target = target_from_states([basis.vacuum()])
    report = suitability(gun, target)
    assert report.f_gt == pytest.approx(0.5)
    assert report.f_gg == pytest.approx(0.25 + 0.25 / 99)
    assert report.f_gt > report.f_gg
    assert report.suitability > report.purity_bound
    assert not report.purity_bound_applicable
    assert report.f_gt <= np.sqrt(report.f_gg * report.f_tt) + 1e-9
    assert report.suitability <= report.cs_bound + 1e-9


@settings(max_examples=500, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dimension=st.integers(2, 20),
       rank=st.integers(1, 20))
@example(seed=78264, dimension=7, rank=7)
def test_metric_properties(seed, dimension, rank):
    rng = np.random.default_rng(seed)
    basis = flat_basis(dimension)
    a = random_density(basis, rng, min(rank, dimension))
    b = random_density(basis, rng)
    assert overlap(a, b) == pytest.approx(overlap(b, a), abs=1e-12)
    assert overlap(a, b) <= np.sqrt(purity(a) * purity(b)) + 1e-9
    assert single_photon_overlap(a, a) <= purity(a) + 1e-12
    assert jozsa_fidelity(a, b) == pytest.approx(jozsa_fidelity(b, a), abs=1e-9)
    assert jozsa_fidelity(a, a) == pytest.approx(1, abs=1e-9)
    assert 0 <= jozsa_fidelity(a, b) <= 1


@settings(max_examples=500, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dimension=st.integers(2, 20))
def test_fidelity_of_commuting_states(seed, dimension):
    rng = np.random.default_rng(seed)
    basis = flat_basis(dimension)
    p = rng.random(dimension)
    q = rng.random(dimension)
    p, q = p / p.sum(), q / q.sum()
    fidelity = jozsa_fidelity(DensityMatrix(basis, np.diag(p)), DensityMatrix(basis, np.diag(q)))
    assert fidelity == pytest.approx(np.sum(np.sqrt(p * q)) ** 2, abs=1e-9)


@settings(max_examples=500, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dimension=st.integers(2, 20),
       data=st.data())
def test_bound_inside_target_support(seed, dimension, data):
    rng = np.random.default_rng(seed)
    basis = flat_basis(dimension)
    kept = data.draw(st.integers(1, dimension))
    projector = np.diag([1] * kept + [0] * (dimension - kept)).astype(complex)
    target = target_from_projector(basis, projector)
    factor = np.zeros((dimension, kept), dtype=complex)
    factor[:kept] = rng.normal(size=(kept, kept)) + 1j * rng.normal(size=(kept, kept))
    matrix = factor @ factor.conj().T
    gun = DensityMatrix(basis, matrix / np.trace(matrix).real)
    report = suitability(gun, target)
    assert report.purity_bound_applicable
    assert report.suitability == pytest.approx(1, abs=1e-9)
    assert report.suitability <= report.purity_bound + 1e-9
    assert report.suitability <= report.cs_bound + 1e-9


def test_fidelity_of_full_rank_state_with_itself():
    rho = random_density(flat_basis(7), np.random.default_rng(78264))
    assert jozsa_fidelity(rho, rho) == pytest.approx(1, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dimension=st.integers(2, 12),
       weight=st.floats(1e-3, 1))
def test_distinct_states_have_fidelity_below_one(seed, dimension, weight):
    rng = np.random.default_rng(seed)
    basis = flat_basis(dimension)
    a = random_density(basis, rng, rng.integers(1, dimension + 1))
    c = random_density(basis, rng)
    b = DensityMatrix(basis, (1 - weight) * a.matrix + weight * c.matrix)
    distance = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(a.matrix - b.matrix)))
    assume(distance > 1e-3)
    fidelity = jozsa_fidelity(a, b)
    assert fidelity < 1 - 1e-6
    assert fidelity <= 1 - distance ** 2 + 1e-9


def test_purity_of_mixed_product_state():
    side_a = DensityMatrix(enumerate_basis(ModeSpace(['a']), 1), np.diag([0.5, 0.5]))
    side_b = DensityMatrix(enumerate_basis(ModeSpace(['b']), 1), np.diag([0.25, 0.75]))
    joint = tensor_product(side_a, side_b)
    assert purity(side_a) == pytest.approx(0.5)
    assert purity(side_b) == pytest.approx(0.625)
    assert purity(joint) == pytest.approx(0.3125, abs=1e-12)

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from conftest import random_density
from exceptions import ScenarioError
from fock_space import (DensityMatrix, ModeSpace, StateVector, enumerate_basis, excitation_state,
                        mixture, validate_density)
from guns import GunSpec, realize_gun
from metrics import overlap, suitability
from optics import apply, beam_splitter
from targets import (hom_detector_target, hom_source_target, polarized_mode_amplitudes,
                     pure_target, qkd_target, target_from_projector, target_from_states)


def test_qkd_target_three_bins(qkd_basis):
    target = qkd_target(qkd_basis, 'H')
    assert target.dim == 3
    assert overlap(target.rho_t, target.rho_t) == pytest.approx(1 / 3, abs=1e-12)
    assert validate_density(target.rho_t).passed


@pytest.mark.parametrize('aux_bin', [0, 1, 2])
def test_every_bin_is_fully_suitable(qkd_basis, aux_bin):
    target = qkd_target(qkd_basis, 'H')
    gun = realize_gun(GunSpec('ideal', polarization='H', aux_bin=aux_bin), qkd_basis)
    report = suitability(gun, target)
    assert report.f_tt == pytest.approx(1 / 3, abs=1e-9)
    assert report.suitability == pytest.approx(1, abs=1e-9)


def test_mixture_of_suitable_guns_is_fully_suitable(qkd_basis):
    target = qkd_target(qkd_basis, 'H')
    guns = [realize_gun(GunSpec('ideal', polarization='H', aux_bin=aux_bin), qkd_basis)
            for aux_bin in range(3)]
    report = suitability(mixture(guns, [0.2, 0.5, 0.3]), target)
    assert report.suitability == pytest.approx(1, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_overlap_with_qkd_target_never_exceeds_one_third(seed):
    basis = enumerate_basis(ModeSpace(['a'], ['H', 'V'], 3), 2)
    target = qkd_target(basis, 'H')
    gun = random_density(basis, np.random.default_rng(seed))
    assert overlap(gun, target.rho_t) <= 1 / 3 + 1e-12


def test_wrong_polarization_is_unsuitable(qkd_basis):
    target = qkd_target(qkd_basis, 'H')
    gun = realize_gun(GunSpec('ideal', polarization='V'), qkd_basis)
    assert suitability(gun, target).suitability == pytest.approx(0, abs=1e-12)
    diagonal = realize_gun(GunSpec('ideal', polarization='D'), qkd_basis)
    assert suitability(diagonal, target).suitability == pytest.approx(0.5, abs=1e-12)


def test_qkd_target_needs_polarization():
    basis = enumerate_basis(ModeSpace(['a']), 2)
    with pytest.raises(ScenarioError):
        qkd_target(basis, 'H')


def test_polarized_amplitudes_of_circular_light(qkd_basis):
    amplitudes = polarized_mode_amplitudes(qkd_basis, 'L', aux_bin=1)
    space = qkd_basis.space
    assert amplitudes[space.mode_index('a', 'H', 1)] == pytest.approx(1 / np.sqrt(2))
    assert amplitudes[space.mode_index('a', 'V', 1)] == pytest.approx(1j / np.sqrt(2))


def test_pure_target_is_pure(qkd_basis):
    target = pure_target(qkd_basis, 'D', aux_bin=2)
    assert target.dim == 1
    assert overlap(target.rho_t, target.rho_t) == pytest.approx(1)


def test_non_orthonormal_states_are_rejected():
    basis = enumerate_basis(ModeSpace(['a', 'b']), 1)
    with pytest.raises(ScenarioError):
        target_from_states([StateVector(basis, [0, 1, 0]), StateVector(basis, [0, 1, 1])])
    with pytest.raises(ScenarioError):
        target_from_states([])


def test_projector_checks():
    basis = enumerate_basis(ModeSpace(['a', 'b']), 1)
    with pytest.raises(ScenarioError):
        target_from_projector(basis, np.zeros((3, 3)))
    with pytest.raises(ScenarioError):
        target_from_projector(basis, np.diag([0.5, 0, 0]))
    with pytest.raises(ScenarioError):
        target_from_projector(basis, np.eye(2))
    assert target_from_projector(basis, np.diag([0, 1, 1])).dim == 2


def test_hom_detector_target_has_no_cross_side_component(hom_basis):
    target = hom_detector_target(hom_basis)
    assert target.dim == 2
    cross = hom_basis.index_of((1, 1))
    assert target.projector[cross, cross] == 0
    assert target.projector[hom_basis.index_of((2, 0)), hom_basis.index_of((2, 0))] == 1


def test_hom_targets_need_two_photons():
    basis = enumerate_basis(ModeSpace(['a', 'b']), 1)
    with pytest.raises(ScenarioError):
        hom_detector_target(basis)
    with pytest.raises(ScenarioError):
        hom_source_target(enumerate_basis(ModeSpace(['a']), 2))


def test_ideal_pair_fits_the_source_target(hom_basis):
    gun = realize_gun(GunSpec('product', children=[GunSpec('ideal'), GunSpec('ideal')]), hom_basis)
    assert suitability(gun, hom_source_target(hom_basis)).suitability == pytest.approx(1, abs=1e-12)


def _two_photon_state(basis, rng) -> DensityMatrix:
    two_photon = np.flatnonzero(basis.total_photons == 2)
    vectors = np.zeros((basis.dimension, 3), dtype=complex)
    vectors[two_photon] = rng.normal(size=(len(two_photon), 3)) \
        + 1j * rng.normal(size=(len(two_photon), 3))
    matrix = vectors @ vectors.conj().T
    return DensityMatrix(basis, matrix / np.trace(matrix).real)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_beam_splitter_does_not_change_suitability(seed):
    basis = enumerate_basis(ModeSpace(['a', 'b'], aux_bins=2), 2)
    rho = _two_photon_state(basis, np.random.default_rng(seed))
    before = suitability(rho, hom_source_target(basis)).suitability
    after = suitability(apply(beam_splitter(basis), rho), hom_detector_target(basis)).suitability
    assert before == pytest.approx(after, abs=1e-9)


def test_excitation_against_pure_target(qkd_basis):
    target = pure_target(qkd_basis, 'H', aux_bin=0)
    photon = excitation_state(qkd_basis, polarized_mode_amplitudes(qkd_basis, 'H')).density()
    assert suitability(photon, target).suitability == pytest.approx(1)


def test_hom_targets_with_two_bins(hom_two_bin_basis):
    assert hom_detector_target(hom_two_bin_basis).dim == 6
    assert hom_source_target(hom_two_bin_basis).dim == 6


def test_antisymmetric_cross_bin_pair_is_outside_source_target(hom_two_bin_basis):
    basis = hom_two_bin_basis
    space = basis.space
    vector = np.zeros(basis.dimension)
    first = [0] * space.mode_count
    first[space.mode_index('a', None, 0)] = first[space.mode_index('b', None, 1)] = 1
    second = [0] * space.mode_count
    second[space.mode_index('a', None, 1)] = second[space.mode_index('b', None, 0)] = 1
    vector[basis.index_of(tuple(first))] = 1
    vector[basis.index_of(tuple(second))] = -1
    rho = StateVector(basis, vector).density()
    assert suitability(rho, hom_source_target(basis)).suitability == pytest.approx(0, abs=1e-12)


def test_projector_of_states_builds_the_same_target(qkd_basis):
    target = qkd_target(qkd_basis, 'D')
    rebuilt = target_from_projector(qkd_basis, target.projector)
    assert rebuilt.dim == target.dim
    np.testing.assert_allclose(rebuilt.rho_t.matrix, target.rho_t.matrix, atol=1e-12)
    gun = random_density(qkd_basis, np.random.default_rng(11))
    assert suitability(gun, rebuilt).suitability == \
        pytest.approx(suitability(gun, target).suitability, abs=1e-12)


def test_circular_target_with_two_bins():
    basis = enumerate_basis(ModeSpace(['a'], ['H', 'V'], 2), 2)
    target = qkd_target(basis, 'L')
    left = suitability(realize_gun(GunSpec('ideal', polarization='L', aux_bin=1), basis), target)
    right = suitability(realize_gun(GunSpec('ideal', polarization='R', aux_bin=1), basis), target)
    horizontal = suitability(realize_gun(GunSpec('ideal', polarization='H'), basis), target)
    assert target.dim == 2
    assert left.f_tt == pytest.approx(0.5, abs=1e-12)
    assert left.suitability == pytest.approx(1, abs=1e-12)
    assert right.suitability == pytest.approx(0, abs=1e-12)
    assert horizontal.suitability == pytest.approx(0.5, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_single_bin_suitability_is_fidelity(seed):
    basis = enumerate_basis(ModeSpace(['a'], ['H', 'V'], 1), 2)
    target = qkd_target(basis, 'H')
    report = suitability(random_density(basis, np.random.default_rng(seed)), target)
    assert target.dim == 1
    assert report.suitability == pytest.approx(report.fidelity, abs=1e-9)

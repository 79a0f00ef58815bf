import numpy as np
import pytest
from exceptions import ScenarioError
from fock_space import ModeSpace, enumerate_basis
from guns import GunSpec
from hom import hom_dip_scan, hom_visibility, overlap_pair


def _coincidence_oracle(gamma: float) -> float:
    '''
    Coincidences of one photon in u and one in v behind the beam splitter,
    summed over the bin pairs of the two detectors.
    '''
    u = np.array([1.0, 0.0])
    v = np.array([gamma, np.sqrt(1 - gamma ** 2)])
    return sum(0.25 * abs(u[j] * v[i] - u[i] * v[j]) ** 2 for i in range(2) for j in range(2))


def test_identical_photons_never_coincide(hom_basis):
    result = hom_visibility(GunSpec('ideal'), GunSpec('ideal'), hom_basis)
    assert result.coincidence_probability == pytest.approx(0, abs=1e-12)
    assert result.visibility == pytest.approx(1, abs=1e-12)
    assert result.metrics.suitability == pytest.approx(1, abs=1e-12)
    assert result.output_state.basis == hom_basis


def test_distinguishable_photons_coincide_half_the_time(hom_two_bin_basis):
    result = hom_visibility(GunSpec('ideal', aux_bin=0), GunSpec('ideal', aux_bin=1),
                            hom_two_bin_basis)
    assert result.coincidence_probability == pytest.approx(0.5, abs=1e-12)
    assert result.visibility == pytest.approx(0.5, abs=1e-12)


def test_orthogonal_polarizations_coincide_half_the_time():
    basis = enumerate_basis(ModeSpace(['a', 'b'], ['H', 'V']), 2)
    result = hom_visibility(GunSpec('ideal', polarization='H'),
                            GunSpec('ideal', polarization='V'), basis)
    assert result.coincidence_probability == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize('gamma', np.linspace(0, 1, 11))
def test_overlap_grid_matches_oracle(hom_two_bin_basis, gamma):
    result = hom_visibility(*overlap_pair(gamma), hom_two_bin_basis)
    assert result.coincidence_probability == pytest.approx(_coincidence_oracle(gamma), abs=1e-12)
    assert result.coincidence_probability == pytest.approx((1 - gamma ** 2) / 2, abs=1e-12)


@pytest.mark.parametrize('bins', range(1, 9))
def test_jittered_photons(bins):
    basis = enumerate_basis(ModeSpace(['a', 'b'], aux_bins=bins), 2)
    result = hom_visibility(GunSpec('jittered'), GunSpec('jittered'), basis)
    assert result.coincidence_probability == pytest.approx((1 - 1 / bins) / 2, abs=1e-12)


def test_overlap_pair_range():
    with pytest.raises(ScenarioError):
        overlap_pair(1.5)
    first, second = overlap_pair(0.6, 'H')
    np.testing.assert_allclose(second.bin_amplitudes, [0.6, 0.8])
    assert first.polarization == 'H'


def test_dip_scan(hom_two_bin_basis):
    frame = hom_dip_scan([0.0, 0.5, 1.0], hom_two_bin_basis)
    assert list(frame.columns) == ['gamma', 'coincidence_probability']
    np.testing.assert_allclose(frame['coincidence_probability'], [0.5, 0.375, 0.0], atol=1e-12)


def test_dip_scan_needs_two_bins(hom_basis):
    with pytest.raises(ScenarioError):
        hom_dip_scan([0.5], hom_basis)
